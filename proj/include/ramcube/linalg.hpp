// Copyright 2026 The ramcube Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ramcube::linalg {

using cplx = std::complex<double>;

// Dense real matrix, column-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i + j * rows_];
  }
  double* col(std::size_t j) { return data_.data() + j * rows_; }
  const double* col(std::size_t j) const { return data_.data() + j * rows_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  static Matrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Householder reduction of a symmetric matrix (lower triangle read) to
// tridiagonal form. On return `a` holds the reflectors below the
// subdiagonal; diag has n entries and offdiag n-1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<double> tau;
};
Tridiagonal tridiagonalize(Matrix& a);

// Accumulates the orthogonal factor Q with A = Q T Q^T from the reflectors
// left in `a` by tridiagonalize.
Matrix form_q(const Matrix& reflectors, const Tridiagonal& t);

// Implicit QL with Wilkinson shifts. Eigenvalues are returned in ascending
// order. When z is non-null its columns are rotated along (pass Q from
// form_q to obtain eigenvectors of the original matrix).
std::vector<double> tridiagonal_ql(std::vector<double> diag,
                                   std::vector<double> offdiag, Matrix* z);

// Eigenvalues (ascending) of a real symmetric matrix.
std::vector<double> symmetric_eigenvalues(Matrix a);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i pairs with values[i]
};
EigenDecomposition symmetric_eigen(Matrix a);

// Numerical rank by Householder QR with column pivoting: counts |R_kk| above
// rel_tol * |R_00|.
std::size_t numerical_rank(Matrix a, double rel_tol);

// Small dense complex matrix, row-major. Used for fibers of local systems.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<cplx>& values() const { return data_; }

  static CMatrix identity(std::size_t n);

  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& b) const;
  CMatrix operator+(const CMatrix& b) const;
  CMatrix operator-(const CMatrix& b) const;
  CMatrix operator*(cplx s) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

double max_abs(const CMatrix& a);

// Largest singular value.
double operator_norm(const CMatrix& a);

CMatrix kronecker(const CMatrix& a, const CMatrix& b);

}  // namespace ramcube::linalg

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
#include <cstdint>
#include <string>
#include <vector>

#include "ramcube/linalg.hpp"

namespace ramcube {

using cplx = std::complex<double>;

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  cplx value;
};

// Complex matrix in compressed sparse row form. Operators on cochains are
// assembled in this form and densified only for eigen-decompositions.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  // Duplicates are summed; entries that sum to exactly zero are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> triplets);
  static SparseMatrix identity(std::size_t n, cplx scale = 1.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }
  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<std::uint32_t>& col_idx() const { return col_idx_; }
  const std::vector<cplx>& values() const { return values_; }

  SparseMatrix adjoint() const;
  SparseMatrix scaled(cplx s) const;
  std::vector<cplx> apply(const std::vector<cplx>& x) const;
  std::vector<Triplet> triplets() const;

  double max_abs() const;
  bool is_real(double tol = 0.0) const;

  // Dense real matrix; requires is_real().
  linalg::Matrix to_dense_real() const;
  // Dense 2n x 2m real form [[Re, -Im], [Im, Re]].
  linalg::Matrix to_dense_realified() const;

  std::string label;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> col_idx_;
  std::vector<cplx> values_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);

// max |a - b| entrywise.
double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b);

// Places `block` at (row_offset, col_offset) scaled by s into triplets.
void append_block(std::vector<Triplet>& out, const SparseMatrix& block,
                  std::size_t row_offset, std::size_t col_offset, cplx s = 1.0);

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);  // sum conj(a) b
double norm2(const std::vector<cplx>& a);

}  // namespace ramcube

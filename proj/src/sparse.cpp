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

#include "ramcube/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "ramcube/errors.hpp"

namespace ramcube {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> t) {
  for (const Triplet& e : t)
    if (e.row >= rows || e.col >= cols) throw PreconditionError("triplet out of range");
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix m(rows, cols);
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t k = i;
    cplx sum = 0.0;
    while (k < t.size() && t[k].row == t[i].row && t[k].col == t[i].col) sum += t[k++].value;
    if (sum != cplx(0.0)) {
      m.col_idx_.push_back(t[i].col);
      m.values_.push_back(sum);
      ++m.row_ptr_[t[i].row + 1];
    }
    i = k;
  }
  for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n, cplx scale) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) t.push_back({i, i, scale});
  return from_triplets(n, n, std::move(t));
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      t.push_back({static_cast<std::uint32_t>(r), col_idx_[k], values_[k]});
  return t;
}

SparseMatrix SparseMatrix::adjoint() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      t.push_back({col_idx_[k], static_cast<std::uint32_t>(r), std::conj(values_[k])});
  SparseMatrix a = from_triplets(cols_, rows_, std::move(t));
  a.label = label.empty() ? label : label + "^*";
  return a;
}

SparseMatrix SparseMatrix::scaled(cplx s) const {
  SparseMatrix m = *this;
  for (cplx& v : m.values_) v *= s;
  return m;
}

std::vector<cplx> SparseMatrix::apply(const std::vector<cplx>& x) const {
  if (x.size() != cols_) throw PreconditionError("apply: size mismatch");
  std::vector<cplx> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx s = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[r] = s;
  }
  return y;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool SparseMatrix::is_real(double tol) const {
  return std::all_of(values_.begin(), values_.end(),
                     [tol](const cplx& v) { return std::abs(v.imag()) <= tol; });
}

linalg::Matrix SparseMatrix::to_dense_real() const {
  linalg::Matrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d(r, col_idx_[k]) += values_[k].real();
  return d;
}

linalg::Matrix SparseMatrix::to_dense_realified() const {
  linalg::Matrix d(2 * rows_, 2 * cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t c = col_idx_[k];
      const double re = values_[k].real();
      const double im = values_[k].imag();
      d(r, c) += re;
      d(r + rows_, c + cols_) += re;
      d(r + rows_, c) += im;
      d(r, c + cols_) -= im;
    }
  return d;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("sparse product: shape mismatch");
  std::vector<Triplet> t;
  std::vector<cplx> acc(b.cols(), 0.0);
  std::vector<char> used(b.cols(), 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    touched.clear();
    for (std::size_t k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      const std::uint32_t mid = a.col_idx()[k];
      const cplx av = a.values()[k];
      for (std::size_t l = b.row_ptr()[mid]; l < b.row_ptr()[mid + 1]; ++l) {
        const std::uint32_t c = b.col_idx()[l];
        if (!used[c]) {
          used[c] = 1;
          touched.push_back(c);
        }
        acc[c] += av * b.values()[l];
      }
    }
    for (std::uint32_t c : touched) {
      t.push_back({static_cast<std::uint32_t>(r), c, acc[c]});
      acc[c] = 0.0;
      used[c] = 0;
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(t));
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw PreconditionError("sparse sum: shape mismatch");
  std::vector<Triplet> t = a.triplets();
  const std::vector<Triplet> tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  return a + b.scaled(-1.0);
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
  return (a - b).max_abs();
}

void append_block(std::vector<Triplet>& out, const SparseMatrix& block,
                  std::size_t row_offset, std::size_t col_offset, cplx s) {
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t k = block.row_ptr()[r]; k < block.row_ptr()[r + 1]; ++k)
      out.push_back({static_cast<std::uint32_t>(r + row_offset),
                     static_cast<std::uint32_t>(block.col_idx()[k] + col_offset),
                     s * block.values()[k]});
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) throw PreconditionError("inner: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const std::vector<cplx>& a) { return std::sqrt(std::real(inner(a, a))); }

}  // namespace ramcube

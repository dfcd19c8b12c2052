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

#include "ramcube/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ramcube/errors.hpp"
#include "ramcube/simd/kernels.hpp"

namespace ramcube::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("multiply: shape mismatch");
  const auto& k = simd::active();
  Matrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double blj = b(l, j);
      if (blj != 0.0) k.axpy(blj, a.col(l), c.col(j), a.rows());
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) t(j, i) = a(i, j);
  return t;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw PreconditionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

Tridiagonal tridiagonalize(Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw PreconditionError("tridiagonalize: matrix not square");
  const auto& kern = simd::active();
  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
  t.tau.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return t;

  // The rank-2 update of step k is applied lazily, fused with the symmetric
  // product of step k+1, so each trailing column is streamed once per step.
  std::vector<double> p(n, 0.0);
  std::vector<double> w_prev(n, 0.0);
  const double* v_prev = nullptr;
  bool pending = false;

  for (std::size_t k = 0; k < n; ++k) {
    double* colk = a.col(k);
    if (pending) {
      const double vk = v_prev[k];
      const double wk = w_prev[k];
      for (std::size_t i = k; i < n; ++i) colk[i] -= vk * w_prev[i] + wk * v_prev[i];
    }
    t.diag[k] = colk[k];
    if (k + 1 >= n) break;

    const std::size_t m = n - k - 1;
    double* x = colk + k + 1;
    const double alpha = x[0];
    const double xnorm2 = m > 1 ? kern.dot(x + 1, x + 1, m - 1) : 0.0;
    if (xnorm2 == 0.0) {
      t.offdiag[k] = alpha;
      if (pending) {
        for (std::size_t c = k + 1; c < n; ++c) {
          double* col = a.col(c);
          for (std::size_t i = c; i < n; ++i)
            col[i] -= v_prev[c] * w_prev[i] + w_prev[c] * v_prev[i];
        }
        pending = false;
      }
      continue;
    }
    const double beta = -std::copysign(std::sqrt(alpha * alpha + xnorm2), alpha);
    const double tau = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (std::size_t i = 1; i < m; ++i) x[i] *= scale;
    x[0] = 1.0;
    t.offdiag[k] = beta;
    t.tau[k] = tau;

    const double* v = colk;  // v[i] valid for i > k
    std::fill(p.begin() + static_cast<std::ptrdiff_t>(k + 1), p.end(), 0.0);
    for (std::size_t c = k + 1; c < n; ++c) {
      double* col = a.col(c);
      const std::size_t len = n - c - 1;
      double s;
      if (pending) {
        col[c] -= 2.0 * v_prev[c] * w_prev[c];
        s = kern.rank2_dot_axpy(col + c + 1, v_prev + c + 1, w_prev.data() + c + 1,
                                w_prev[c], v_prev[c], v + c + 1, p.data() + c + 1,
                                v[c], len);
      } else {
        s = kern.dot_axpy(col + c + 1, v + c + 1, p.data() + c + 1, v[c], len);
      }
      p[c] += col[c] * v[c] + s;
    }
    for (std::size_t i = k + 1; i < n; ++i) p[i] *= tau;
    const double half = 0.5 * tau * kern.dot(p.data() + k + 1, v + k + 1, m);
    for (std::size_t i = k + 1; i < n; ++i) w_prev[i] = p[i] - half * v[i];
    v_prev = v;
    pending = true;
  }
  return t;
}

Matrix form_q(const Matrix& reflectors, const Tridiagonal& t) {
  const std::size_t n = reflectors.rows();
  const auto& kern = simd::active();
  Matrix q = Matrix::identity(n);
  for (std::size_t kk = t.tau.size(); kk-- > 0;) {
    const double tau = t.tau[kk];
    if (tau == 0.0) continue;
    const std::size_t m = n - kk - 1;
    const double* v = reflectors.col(kk) + kk + 1;
    for (std::size_t c = kk + 1; c < n; ++c) {
      double* qc = q.col(c) + kk + 1;
      const double s = tau * kern.dot(v, qc, m);
      if (s != 0.0) kern.axpy(-s, v, qc, m);
    }
  }
  return q;
}

std::vector<double> tridiagonal_ql(std::vector<double> d, std::vector<double> e,
                                   Matrix* z) {
  const std::size_t n = d.size();
  if (n == 0) return d;
  if (e.size() + 1 != n) throw PreconditionError("tridiagonal_ql: size mismatch");
  const auto& kern = simd::active();
  e.push_back(0.0);
  const std::size_t zn = z != nullptr ? z->rows() : 0;
  constexpr int kMaxIter = 60;
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]));
  const double floor = std::numeric_limits<double>::epsilon() * anorm;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd ||
            std::abs(e[m]) <= floor)
          break;
      }
      if (m == l) break;
      if (iter++ == kMaxIter)
        throw NumericalError("tridiagonal_ql: no convergence");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) kern.rot(z->col(i), z->col(i + 1), c, s, zn);
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = d[order[i]];
  if (z != nullptr) {
    Matrix zs(zn, n);
    for (std::size_t i = 0; i < n; ++i)
      std::copy(z->col(order[i]), z->col(order[i]) + zn, zs.col(i));
    *z = std::move(zs);
  }
  return sorted;
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
  Tridiagonal t = tridiagonalize(a);
  return tridiagonal_ql(std::move(t.diag), std::move(t.offdiag), nullptr);
}

EigenDecomposition symmetric_eigen(Matrix a) {
  Tridiagonal t = tridiagonalize(a);
  EigenDecomposition out;
  out.vectors = form_q(a, t);
  out.values = tridiagonal_ql(std::move(t.diag), std::move(t.offdiag), &out.vectors);
  return out;
}

std::size_t numerical_rank(Matrix a, double rel_tol) {
  if (a.rows() < a.cols()) a = transpose(a);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (n == 0) return 0;
  const auto& kern = simd::active();

  std::vector<double> norms(n);
  for (std::size_t c = 0; c < n; ++c) norms[c] = kern.dot(a.col(c), a.col(c), m);
  std::vector<double> scratch(m);
  double r00 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t c = k + 1; c < n; ++c)
      if (norms[c] > norms[piv]) piv = c;
    if (piv != k) {
      std::swap_ranges(a.col(k), a.col(k) + m, a.col(piv));
      std::swap(norms[k], norms[piv]);
    }
    const std::size_t len = m - k;
    double* x = a.col(k) + k;
    const double xnorm2 = kern.dot(x, x, len);
    const double rkk = std::sqrt(xnorm2);
    if (k == 0) {
      r00 = rkk;
      if (r00 == 0.0) return 0;
    }
    if (rkk <= rel_tol * r00) return k;
    if (k + 1 == m) return k + 1;

    const double alpha = x[0];
    const double beta = -std::copysign(rkk, alpha);
    const double tau = (beta - alpha) / beta;
    const double scale = 1.0 / (alpha - beta);
    for (std::size_t i = 1; i < len; ++i) x[i] *= scale;
    x[0] = 1.0;
    for (std::size_t c = k + 1; c < n; ++c) {
      double* y = a.col(c) + k;
      const double s = tau * kern.dot(x, y, len);
      kern.axpy(-s, x, y, len);
      norms[c] -= y[0] * y[0];
      // Downdated norms lose accuracy once most of the column is gone.
      if (norms[c] < 1e-6 * xnorm2) norms[c] = kern.dot(y + 1, y + 1, len - 1);
    }
  }
  return n;
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

CMatrix CMatrix::operator*(const CMatrix& b) const {
  if (cols_ != b.rows_) throw PreconditionError("CMatrix: shape mismatch");
  CMatrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const cplx x = (*this)(i, l);
      if (x == cplx(0.0)) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(l, j);
    }
  return c;
}

CMatrix CMatrix::operator+(const CMatrix& b) const {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw PreconditionError("CMatrix: shape mismatch");
  CMatrix c = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

CMatrix CMatrix::operator-(const CMatrix& b) const { return *this + b * cplx(-1.0); }

CMatrix CMatrix::operator*(cplx s) const {
  CMatrix c = *this;
  for (auto& x : c.data_) x *= s;
  return c;
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const cplx& x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

double operator_norm(const CMatrix& a) {
  const CMatrix g = a.adjoint() * a;
  const std::size_t n = g.rows();
  if (n == 0) return 0.0;
  // Real form [[Re, -Im], [Im, Re]] of the Hermitian Gram matrix.
  Matrix r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r(i, j) = g(i, j).real();
      r(i + n, j + n) = g(i, j).real();
      r(i + n, j) = g(i, j).imag();
      r(i, j + n) = -g(i, j).imag();
    }
  const auto ev = symmetric_eigenvalues(std::move(r));
  return std::sqrt(std::max(0.0, ev.back()));
}

CMatrix kronecker(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

}  // namespace ramcube::linalg

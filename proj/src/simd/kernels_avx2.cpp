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

// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// cpuid check.

#include <immintrin.h>

#include "ramcube/simd/kernels.hpp"

namespace ramcube::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void rot_avx2(double* x, double* y, double c, double s, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_axpy_avx2(const double* col, const double* x, double* y, double xc,
                     std::size_t n) {
  const __m256d vxc = _mm256_set1_pd(xc);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ci = _mm256_loadu_pd(col + i);
    acc = _mm256_fmadd_pd(ci, _mm256_loadu_pd(x + i), acc);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vxc, ci, _mm256_loadu_pd(y + i)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    s += col[i] * x[i];
    y[i] += xc * col[i];
  }
  return s;
}

double rank2_dot_axpy_avx2(double* col, const double* v, const double* w,
                           double a, double b, const double* x, double* y,
                           double xc, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vxc = _mm256_set1_pd(xc);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ci = _mm256_loadu_pd(col + i);
    ci = _mm256_fnmadd_pd(va, _mm256_loadu_pd(v + i), ci);
    ci = _mm256_fnmadd_pd(vb, _mm256_loadu_pd(w + i), ci);
    _mm256_storeu_pd(col + i, ci);
    acc = _mm256_fmadd_pd(ci, _mm256_loadu_pd(x + i), acc);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vxc, ci, _mm256_loadu_pd(y + i)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double c = col[i] - a * v[i] - b * w[i];
    col[i] = c;
    s += c * x[i];
    y[i] += xc * c;
  }
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2",        dot_avx2,
                                 axpy_avx2,     rot_avx2,
                                 dot_axpy_avx2, rank2_dot_axpy_avx2};
  return table;
}

}  // namespace ramcube::simd

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

#include "ramcube/simd/kernels.hpp"

namespace ramcube::simd {
namespace {

double dot_generic(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_generic(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rot_generic(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double dot_axpy_generic(const double* col, const double* x, double* y,
                        double xc, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += col[i] * x[i];
    y[i] += xc * col[i];
  }
  return s;
}

double rank2_dot_axpy_generic(double* col, const double* v, const double* w,
                              double a, double b, const double* x, double* y,
                              double xc, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = col[i] - a * v[i] - b * w[i];
    col[i] = c;
    s += c * x[i];
    y[i] += xc * c;
  }
  return s;
}

}  // namespace

const KernelTable& generic_kernels() {
  static const KernelTable table{"generic",        dot_generic,
                                 axpy_generic,     rot_generic,
                                 dot_axpy_generic, rank2_dot_axpy_generic};
  return table;
}

}  // namespace ramcube::simd

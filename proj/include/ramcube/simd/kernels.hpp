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

#include <cstddef>
#include <string_view>
#include <vector>

// Double-precision vector kernels used by the dense eigensolver and the
// pivoted QR. Each kernel has a scalar reference version and, on x86-64,
// an AVX2/FMA version chosen at runtime.

namespace ramcube::simd {

struct KernelTable {
  const char* name;

  // sum x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);

  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  // (x[i], y[i]) <- (c x[i] - s y[i], s x[i] + c y[i])
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);

  // y[i] += xc * col[i]; returns sum col[i] * x[i]
  double (*dot_axpy)(const double* col, const double* x, double* y, double xc,
                     std::size_t n);

  // col[i] -= a * v[i] + b * w[i], then as dot_axpy on the updated column.
  double (*rank2_dot_axpy)(double* col, const double* v, const double* w,
                           double a, double b, const double* x, double* y,
                           double xc, std::size_t n);
};

const KernelTable& generic_kernels();

// nullptr when the AVX2 variant is not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// Kernel table in use. Defaults to the best supported variant; the
// environment variable RAMCUBE_SIMD=generic forces the scalar path.
const KernelTable& active();

// Selects a variant by name ("generic" or "avx2"). Returns false if the
// variant is unavailable; the active table is then unchanged.
bool select(std::string_view name);

std::vector<std::string_view> available();

}  // namespace ramcube::simd

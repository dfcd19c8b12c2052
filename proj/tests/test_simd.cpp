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

#include <algorithm>
#include <cmath>
#include <string>
#include <random>
#include <vector>

#include "doctest.h"
#include "ramcube/simd/kernels.hpp"

namespace simd = ramcube::simd;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Lengths around the 4- and 8-lane boundaries plus a long tail.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 1001};

}  // namespace

TEST_CASE("generic table is always available and selectable") {
  CHECK(std::string(simd::generic_kernels().name) == "generic");
  CHECK(simd::select("generic"));
  CHECK(std::string(simd::active().name) == "generic");
  CHECK_FALSE(simd::select("no-such-table"));
  const auto names = simd::available();
  CHECK(std::find(names.begin(), names.end(), "generic") != names.end());
  if (simd::avx2_kernels() != nullptr) CHECK(simd::select("avx2"));
  CHECK(std::string(simd::active().name) == simd::available().back());
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const simd::KernelTable* fast = simd::avx2_kernels();
  if (fast == nullptr) {
    MESSAGE("AVX2 not available on this machine; equivalence not exercised");
    return;
  }
  const simd::KernelTable& ref = simd::generic_kernels();
  std::mt19937_64 rng(20260101);
  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto x = random_vec(n, rng);
    const auto y0 = random_vec(n, rng);
    const auto w = random_vec(n, rng);
    const auto c0 = random_vec(n, rng);
    const double tol = 1e-13 * static_cast<double>(n + 1);

    CHECK(std::abs(ref.dot(x.data(), y0.data(), n) - fast->dot(x.data(), y0.data(), n)) <= tol);

    auto ya = y0, yb = y0;
    ref.axpy(0.37, x.data(), ya.data(), n);
    fast->axpy(0.37, x.data(), yb.data(), n);
    CHECK(max_diff(ya, yb) <= 1e-15);

    auto xa = x, xb = x;
    ya = y0;
    yb = y0;
    const double th = 0.9;
    ref.rot(xa.data(), ya.data(), std::cos(th), std::sin(th), n);
    fast->rot(xb.data(), yb.data(), std::cos(th), std::sin(th), n);
    CHECK(max_diff(xa, xb) <= 1e-15);
    CHECK(max_diff(ya, yb) <= 1e-15);

    ya = y0;
    yb = y0;
    const double sa = ref.dot_axpy(c0.data(), x.data(), ya.data(), -1.25, n);
    const double sb = fast->dot_axpy(c0.data(), x.data(), yb.data(), -1.25, n);
    CHECK(std::abs(sa - sb) <= tol);
    CHECK(max_diff(ya, yb) <= 1e-15);

    auto ca = c0, cb = c0;
    ya = y0;
    yb = y0;
    const double ra = ref.rank2_dot_axpy(ca.data(), x.data(), w.data(), 0.5, -0.75, y0.data(),
                                         ya.data(), 2.0, n);
    const double rb = fast->rank2_dot_axpy(cb.data(), x.data(), w.data(), 0.5, -0.75, y0.data(),
                                           yb.data(), 2.0, n);
    CHECK(std::abs(ra - rb) <= tol);
    CHECK(max_diff(ca, cb) <= 1e-15);
    CHECK(max_diff(ya, yb) <= 1e-15);
  }
}

TEST_CASE("scalar kernels match their definitions") {
  const simd::KernelTable& k = simd::generic_kernels();
  const std::vector<double> x{1, 2, 3}, v{1, 0, -1}, w{0, 1, 1};
  std::vector<double> y{0, 0, 0};
  CHECK(k.dot(x.data(), x.data(), 3) == 14.0);
  k.axpy(2.0, x.data(), y.data(), 3);
  CHECK(y == std::vector<double>{2, 4, 6});
  std::vector<double> col{1, 1, 1};
  std::vector<double> acc{0, 0, 0};
  // col - v - 2w = (0, -1, 0); its dot with x is -2 and acc gains 3 times it.
  const double s = k.rank2_dot_axpy(col.data(), v.data(), w.data(), 1.0, 2.0, x.data(), acc.data(), 3.0, 3);
  CHECK(col == std::vector<double>{0, -1, 0});
  CHECK(s == -2.0);
  CHECK(acc == std::vector<double>{0, -3, 0});
}

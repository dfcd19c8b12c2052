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

#include "ramcube/quat.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ramcube/errors.hpp"

namespace ramcube {

std::int64_t norm(const Quaternion& q) {
  return q.a0 * q.a0 + q.a1 * q.a1 + q.a2 * q.a2 + q.a3 * q.a3;
}

Quaternion conjugate(const Quaternion& q) { return {q.a0, -q.a1, -q.a2, -q.a3}; }

Quaternion negate(const Quaternion& q) { return {-q.a0, -q.a1, -q.a2, -q.a3}; }

Quaternion multiply(const Quaternion& x, const Quaternion& y) {
  return {x.a0 * y.a0 - x.a1 * y.a1 - x.a2 * y.a2 - x.a3 * y.a3,
          x.a0 * y.a1 + x.a1 * y.a0 + x.a2 * y.a3 - x.a3 * y.a2,
          x.a0 * y.a2 - x.a1 * y.a3 + x.a2 * y.a0 + x.a3 * y.a1,
          x.a0 * y.a3 + x.a1 * y.a2 - x.a2 * y.a1 + x.a3 * y.a0};
}

std::string to_string(const Quaternion& q) {
  return "(" + std::to_string(q.a0) + "," + std::to_string(q.a1) + "," +
         std::to_string(q.a2) + "," + std::to_string(q.a3) + ")";
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<Quaternion> enumerate_generators(std::int64_t p) {
  if (p == 2 || !is_prime(p))
    throw PreconditionError("enumerate_generators: " + std::to_string(p) +
                            " is not an odd prime");
  std::int64_t s = 0;
  while ((s + 1) * (s + 1) <= p) ++s;
  const std::int64_t even_lo = -(s / 2) * 2;
  std::vector<Quaternion> out;
  for (std::int64_t a0 = 1; a0 <= s; a0 += 2)
    for (std::int64_t a1 = even_lo; a1 <= s; a1 += 2)
      for (std::int64_t a2 = even_lo; a2 <= s; a2 += 2)
        for (std::int64_t a3 = even_lo; a3 <= s; a3 += 2) {
          const Quaternion q{a0, a1, a2, a3};
          if (norm(q) == p) out.push_back(q);
        }
  return out;
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t n) {
  std::int64_t r = 1 % n;
  b = mod(b, n);
  while (e > 0) {
    if (e & 1) r = r * b % n;
    b = b * b % n;
    e >>= 1;
  }
  return r;
}

void require_odd_prime_modulus(std::int64_t n1) {
  if (n1 < 3 || !is_prime(n1))
    throw InvalidModulus("modulus " + std::to_string(n1) + " is not an odd prime");
}

}  // namespace

ResiduePair solve_residue(std::int64_t n1) {
  require_odd_prime_modulus(n1);
  for (std::int64_t y = 0; y < n1; ++y)
    for (std::int64_t x = 0; x < n1; ++x)
      if ((x * x + y * y + 1) % n1 == 0) return {n1, x, y};
  throw InvalidModulus("no residue pair modulo " + std::to_string(n1));
}

Mat2 mat_mul(const Mat2& a, const Mat2& b, std::int64_t n) {
  const auto& x = a.m;
  const auto& y = b.m;
  return {{mod(x[0] * y[0] + x[1] * y[2], n), mod(x[0] * y[1] + x[1] * y[3], n),
           mod(x[2] * y[0] + x[3] * y[2], n), mod(x[2] * y[1] + x[3] * y[3], n)}};
}

std::int64_t mat_det(const Mat2& a, std::int64_t n) {
  return mod(a.m[0] * a.m[3] - a.m[1] * a.m[2], n);
}

Mat2 mat_scale(const Mat2& a, std::int64_t s, std::int64_t n) {
  Mat2 r;
  for (int i = 0; i < 4; ++i) r.m[i] = mod(a.m[i] * s, n);
  return r;
}

std::string to_string(const Mat2& a) {
  return "[" + std::to_string(a.m[0]) + " " + std::to_string(a.m[1]) + "; " +
         std::to_string(a.m[2]) + " " + std::to_string(a.m[3]) + "]";
}

Mat2 embed(const Quaternion& q, const ResiduePair& r) {
  const std::int64_t n = r.modulus;
  const std::int64_t x = r.x;
  const std::int64_t y = r.y;
  return {{mod(q.a0 + q.a1 * x + q.a3 * y, n), mod(-q.a2 + q.a1 * y - q.a3 * x, n),
           mod(q.a2 + q.a1 * y - q.a3 * x, n), mod(q.a0 - q.a1 * x - q.a3 * y, n)}};
}

Mat2 canonicalize(const Mat2& a, const std::vector<std::int64_t>& scalars,
                  std::int64_t n) {
  Mat2 best = mat_scale(a, scalars.empty() ? 1 : scalars.front(), n);
  for (std::int64_t s : scalars) {
    const Mat2 c = mat_scale(a, s, n);
    if (c < best) best = c;
  }
  return best;
}

std::vector<std::int64_t> cyclic_span(const std::vector<std::int64_t>& gens,
                                      std::int64_t n) {
  std::set<std::int64_t> seen{1 % n};
  std::vector<std::int64_t> frontier{1 % n};
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (std::int64_t a : frontier)
      for (std::int64_t g : gens) {
        const std::int64_t b = mod(a * g, n);
        if (seen.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

ProjGroup::ProjGroup(std::int64_t n, std::vector<std::int64_t> dets,
                     std::vector<std::int64_t> scalars)
    : n_(n), dets_(std::move(dets)), scalars_(std::move(scalars)) {
  std::vector<char> det_ok(static_cast<std::size_t>(n), 0);
  for (std::int64_t d : dets_) det_ok[static_cast<std::size_t>(d)] = 1;
  Mat2 a;
  for (a.m[0] = 0; a.m[0] < n; ++a.m[0])
    for (a.m[1] = 0; a.m[1] < n; ++a.m[1])
      for (a.m[2] = 0; a.m[2] < n; ++a.m[2])
        for (a.m[3] = 0; a.m[3] < n; ++a.m[3]) {
          if (!det_ok[static_cast<std::size_t>(mat_det(a, n))]) continue;
          bool canonical = true;
          for (std::int64_t s : scalars_) {
            if (mat_scale(a, s, n) < a) {
              canonical = false;
              break;
            }
          }
          if (!canonical) continue;
          index_.emplace(key(a, n), static_cast<std::uint32_t>(elements_.size()));
          elements_.push_back(a);
        }
  identity_ = index_of(Mat2{{1, 0, 0, 1}});
}

std::uint64_t ProjGroup::key(const Mat2& a, std::int64_t n) {
  std::uint64_t k = 0;
  for (std::int64_t e : a.m) k = k * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(e);
  return k;
}

std::uint32_t ProjGroup::index_of(const Mat2& a) const {
  const auto it = index_.find(key(canonicalize(a, scalars_, n_), n_));
  if (it == index_.end())
    throw PreconditionError("matrix " + to_string(a) + " is not in the group");
  return it->second;
}

bool ProjGroup::contains(const Mat2& a) const {
  return index_.count(key(canonicalize(a, scalars_, n_), n_)) != 0;
}

std::uint32_t ProjGroup::multiply(std::uint32_t a, std::uint32_t b) const {
  return index_of(mat_mul(elements_[a], elements_[b], n_));
}

std::uint32_t ProjGroup::inverse(std::uint32_t a) const {
  // The adjugate differs from the inverse by the scalar det, which lies in
  // every scalar subgroup used here.
  const auto& m = elements_[a].m;
  return index_of(Mat2{{m[3], mod(-m[1], n_), mod(-m[2], n_), m[0]}});
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::kPGL2: return "PGL2";
    case GroupKind::kPSL2: return "PSL2";
    case GroupKind::kSL2: return "SL2";
  }
  return "?";
}

GroupKind predicted_group_kind(const std::vector<std::int64_t>& primes,
                               std::int64_t n1) {
  for (std::int64_t p : primes)
    if (pow_mod(p, (n1 - 1) / 2, n1) == n1 - 1) return GroupKind::kPGL2;
  std::vector<std::int64_t> gens;
  for (std::int64_t p : primes) gens.push_back(mod(p, n1));
  const auto span = cyclic_span(gens, n1);
  if (std::binary_search(span.begin(), span.end(), n1 - 1)) return GroupKind::kSL2;
  return GroupKind::kPSL2;
}

FiniteGroupTable build_group(const std::vector<std::int64_t>& primes,
                             std::int64_t n1, std::optional<ResiduePair> residue) {
  require_odd_prime_modulus(n1);
  for (std::int64_t p : primes)
    if (p % n1 == 0)
      throw InvalidModulus("modulus " + std::to_string(n1) + " divides prime " +
                           std::to_string(p));
  FiniteGroupTable t;
  t.n1 = n1;
  if (residue) {
    const ResiduePair& r = *residue;
    if (r.modulus != n1 || mod(r.x * r.x + r.y * r.y + 1, n1) != 0)
      throw InvalidModulus("residue pair is not a solution of x^2 + y^2 + 1 = 0 mod " +
                           std::to_string(n1));
    t.residue = r;
  } else {
    t.residue = solve_residue(n1);
  }
  std::vector<std::int64_t> gens;
  for (std::int64_t p : primes) gens.push_back(mod(p, n1));
  t.det_subgroup = cyclic_span(gens, n1);
  std::vector<std::int64_t> with_sign = gens;
  with_sign.push_back(n1 - 1);
  t.h = ProjGroup(n1, t.det_subgroup, cyclic_span(with_sign, n1));
  t.cover = ProjGroup(n1, t.det_subgroup, t.det_subgroup);
  t.quotient.resize(t.cover.size());
  for (std::uint32_t i = 0; i < t.cover.size(); ++i)
    t.quotient[i] = t.h.index_of(t.cover.element(i));
  t.section.resize(t.h.size());
  for (std::uint32_t i = 0; i < t.h.size(); ++i)
    t.section[i] = t.cover.index_of(t.h.element(i));
  bool has_nonresidue = false;
  for (std::int64_t d : t.det_subgroup)
    if (pow_mod(d, (n1 - 1) / 2, n1) == n1 - 1) has_nonresidue = true;
  const std::size_t gl_order = static_cast<std::size_t>(n1 * (n1 * n1 - 1));
  if (has_nonresidue)
    t.kind = GroupKind::kPGL2;
  else
    t.kind = t.h.size() == gl_order ? GroupKind::kSL2 : GroupKind::kPSL2;
  return t;
}

}  // namespace ramcube

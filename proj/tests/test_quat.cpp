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
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "ramcube/errors.hpp"
#include "ramcube/quat.hpp"

using namespace ramcube;

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

// Direct four-square scan, kept apart from enumerate_generators.
std::set<Quaternion> brute_generators(std::int64_t p) {
  std::set<Quaternion> out;
  const auto b = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p))) + 1;
  for (std::int64_t a0 = 1; a0 <= b; a0 += 2)
    for (std::int64_t a1 = -b; a1 <= b; ++a1)
      for (std::int64_t a2 = -b; a2 <= b; ++a2)
        for (std::int64_t a3 = -b; a3 <= b; ++a3)
          if (a1 % 2 == 0 && a2 % 2 == 0 && a3 % 2 == 0 &&
              a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p)
            out.insert({a0, a1, a2, a3});
  return out;
}

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-50, 50);
  return {d(rng), d(rng), d(rng), d(rng)};
}

bool legendre_nonresidue(std::int64_t a, std::int64_t p) {
  for (std::int64_t x = 1; x < p; ++x)
    if (mod(x * x, p) == mod(a, p)) return false;
  return true;
}

}  // namespace

TEST_CASE("norm, conjugate and Hamilton product") {
  CHECK(norm({1, 2, 0, 0}) == 5);
  CHECK(norm({1, 0, 0, 0}) == 1);
  CHECK(norm({3, 2, 0, 0}) == 13);
  CHECK(conjugate({1, 2, 0, 0}) == Quaternion{1, -2, 0, 0});
  CHECK(conjugate({1, 0, 0, 0}) == Quaternion{1, 0, 0, 0});
  CHECK(Quaternion{3, -2, 2, -2} * conjugate({3, -2, 2, -2}) == Quaternion{21, 0, 0, 0});
  CHECK(Quaternion{0, 1, 0, 0} * Quaternion{0, 0, 1, 0} == Quaternion{0, 0, 0, 1});
  CHECK(Quaternion{0, 0, 1, 0} * Quaternion{0, 0, 0, 1} == Quaternion{0, 1, 0, 0});
  CHECK(Quaternion{0, 0, 0, 1} * Quaternion{0, 1, 0, 0} == Quaternion{0, 0, 1, 0});
  CHECK(Quaternion{0, 0, 1, 0} * Quaternion{0, 1, 0, 0} == Quaternion{0, 0, 0, -1});
  CHECK(Quaternion{1, 0, 0, 0} * Quaternion{4, -3, 2, 7} == Quaternion{4, -3, 2, 7});
  CHECK(Quaternion{1, 2, 0, 0} * Quaternion{1, -2, 0, 0} == Quaternion{5, 0, 0, 0});
  CHECK(negate({1, -2, 3, 0}) == Quaternion{-1, 2, -3, 0});
}

TEST_CASE("quaternion algebra properties on random inputs") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 500; ++t) {
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng), c = random_quaternion(rng);
    CHECK(norm(a * b) == norm(a) * norm(b));
    CHECK((a * b) * c == a * (b * c));
    CHECK(conjugate(a * b) == conjugate(b) * conjugate(a));
    CHECK(a * conjugate(a) == Quaternion{norm(a), 0, 0, 0});
  }
}

TEST_CASE("generators of norm p") {
  const auto g5 = enumerate_generators(5);
  CHECK(g5.size() == 6);
  CHECK(std::set<Quaternion>(g5.begin(), g5.end()) ==
        std::set<Quaternion>{{1, 2, 0, 0}, {1, -2, 0, 0}, {1, 0, 2, 0},
                             {1, 0, -2, 0}, {1, 0, 0, 2}, {1, 0, 0, -2}});
  const auto g13 = enumerate_generators(13);
  CHECK(g13.size() == 14);
  std::size_t three_type = 0, one_type = 0;
  for (const auto& q : g13) {
    if (q.a0 == 3) ++three_type;
    if (q.a0 == 1 && q.a1 != 0 && q.a2 != 0 && q.a3 != 0) ++one_type;
  }
  CHECK(three_type == 6);
  CHECK(one_type == 8);

  for (std::int64_t p : {5, 13, 17, 29, 37, 41, 3, 7, 11}) {
    CAPTURE(p);
    const auto g = enumerate_generators(p);
    CHECK(std::set<Quaternion>(g.begin(), g.end()) == brute_generators(p));
    for (const auto& q : g) {
      CHECK(norm(q) == p);
      CHECK(std::find(g.begin(), g.end(), conjugate(q)) != g.end());
    }
    if (p % 4 == 1) CHECK(g.size() == static_cast<std::size_t>(p + 1));
    for (const auto& a : g)
      for (const auto& b : g) CHECK(norm(a * b) == p * p);
  }
  CHECK(enumerate_generators(3).empty());
  CHECK_THROWS_AS(enumerate_generators(2), PreconditionError);
  CHECK_THROWS_AS(enumerate_generators(15), PreconditionError);
}

TEST_CASE("splitting residues") {
  CHECK(solve_residue(13).x == 5);
  CHECK(solve_residue(13).y == 0);
  CHECK(solve_residue(3).x == 1);
  CHECK(solve_residue(3).y == 1);
  for (std::int64_t n : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 97}) {
    const ResiduePair r = solve_residue(n);
    CHECK(r.modulus == n);
    CHECK(mod(r.x * r.x + r.y * r.y + 1, n) == 0);
    // Lexicographically least over (y, x) scan order: nothing earlier solves it.
    bool earlier = false;
    for (std::int64_t y = 0; y <= r.y && !earlier; ++y)
      for (std::int64_t x = 0; x < (y == r.y ? r.x : n); ++x)
        if (mod(x * x + y * y + 1, n) == 0) earlier = true;
    CHECK_FALSE(earlier);
  }
  CHECK_THROWS_AS(solve_residue(9), InvalidModulus);
}

TEST_CASE("embedding is a ring homomorphism with det = norm") {
  const ResiduePair r13 = solve_residue(13);
  CHECK(embed({1, 2, 0, 0}, r13) == Mat2{{11, 0, 0, 4}});
  CHECK(mat_det(embed({1, 2, 0, 0}, r13), 13) == 5);
  for (std::int64_t n : {3, 7, 13, 17}) {
    const ResiduePair r = solve_residue(n);
    const Mat2 i = embed({0, 1, 0, 0}, r), j = embed({0, 0, 1, 0}, r), k = embed({0, 0, 0, 1}, r);
    const Mat2 minus_one{{n - 1, 0, 0, n - 1}};
    CHECK(mat_mul(i, i, n) == minus_one);
    CHECK(mat_mul(j, j, n) == minus_one);
    CHECK(mat_mul(i, j, n) == k);
  }
  std::mt19937_64 rng(102);
  for (std::int64_t n : {3, 13, 29}) {
    const ResiduePair r = solve_residue(n);
    for (int t = 0; t < 100; ++t) {
      const Quaternion a = random_quaternion(rng), b = random_quaternion(rng);
      CHECK(embed(a * b, r) == mat_mul(embed(a, r), embed(b, r), n));
      CHECK(mat_det(embed(a, r), n) == mod(norm(a), n));
    }
  }
  // Exhaustive over generator pairs of the (5, 13) configuration.
  std::vector<Quaternion> gens = enumerate_generators(5);
  for (const auto& q : enumerate_generators(13)) gens.push_back(q);
  for (std::int64_t n : {3, 7, 11}) {
    const ResiduePair r = solve_residue(n);
    for (const auto& a : gens) {
      CHECK(mat_det(embed(a, r), n) == mod(norm(a), n));
      for (const auto& b : gens) CHECK(embed(a * b, r) == mat_mul(embed(a, r), embed(b, r), n));
    }
  }
}

TEST_CASE("canonical coset representatives are lexicographic minima") {
  std::mt19937_64 rng(103);
  const std::int64_t n = 13;
  const auto scalars = cyclic_span({5, n - 1}, n);
  CHECK(scalars == std::vector<std::int64_t>{1, 5, 8, 12});
  std::uniform_int_distribution<std::int64_t> d(0, n - 1);
  for (int t = 0; t < 200; ++t) {
    const Mat2 a{{d(rng), d(rng), d(rng), d(rng)}};
    const Mat2 c = canonicalize(a, scalars, n);
    for (std::int64_t s : scalars) {
      CHECK(c <= mat_scale(a, s, n));
      CHECK(canonicalize(mat_scale(a, s, n), scalars, n) == c);
    }
  }
}

TEST_CASE("group orders follow the quadratic residue criterion") {
  struct Case {
    std::vector<std::int64_t> primes;
    std::int64_t n1;
    std::size_t order;
    GroupKind kind;
  };
  // Orders: |PGL2(q)| = |SL2(q)| = q(q^2 - 1), |PSL2(q)| = q(q^2 - 1) / 2.
  const std::vector<Case> cases = {
      {{5}, 13, 2184, GroupKind::kPGL2},   {{5, 13}, 3, 24, GroupKind::kPGL2},
      {{5}, 3, 24, GroupKind::kPGL2},      {{5}, 7, 336, GroupKind::kPGL2},
      {{5}, 11, 660, GroupKind::kPSL2},    {{5}, 29, 24360, GroupKind::kSL2},
      {{13}, 17, 4896, GroupKind::kSL2},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n1);
    const FiniteGroupTable t = build_group(c.primes, c.n1);
    CHECK(t.h.size() == c.order);
    CHECK(t.kind == c.kind);
    CHECK(predicted_group_kind(c.primes, c.n1) == c.kind);
    bool nonresidue = false;
    for (auto p : c.primes) nonresidue = nonresidue || legendre_nonresidue(p, c.n1);
    CHECK(nonresidue == (c.kind == GroupKind::kPGL2));
    CHECK((t.kernel_order() == 1 || t.kernel_order() == 2));
    CHECK(t.kernel_order() * t.h.size() == t.cover.size());
  }
}

TEST_CASE("group tables: identity, inverses, associativity, quotient and section") {
  const FiniteGroupTable t = build_group({5}, 13);
  const ProjGroup& h = t.h;
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(h.size() - 1));
  std::size_t identities = 0;
  for (std::uint32_t a = 0; a < h.size(); ++a) {
    if (h.multiply(a, a) == a) ++identities;
    CHECK(h.multiply(a, h.inverse(a)) == h.identity());
    CHECK(h.multiply(h.identity(), a) == a);
  }
  CHECK(identities == 1);
  for (int s = 0; s < 300; ++s) {
    const auto a = pick(rng), b = pick(rng), c = pick(rng);
    CHECK(h.multiply(h.multiply(a, b), c) == h.multiply(a, h.multiply(b, c)));
  }
  std::uniform_int_distribution<std::uint32_t> pick_cover(0, static_cast<std::uint32_t>(t.cover.size() - 1));
  for (int s = 0; s < 300; ++s) {
    const auto a = pick_cover(rng), b = pick_cover(rng);
    CHECK(t.quotient[t.cover.multiply(a, b)] == h.multiply(t.quotient[a], t.quotient[b]));
  }
  for (std::uint32_t a = 0; a < h.size(); ++a) CHECK(t.quotient[t.section[a]] == a);
  for (std::uint32_t a = 0; a < h.size(); ++a)
    CHECK(h.contains(h.element(a)));
}

TEST_CASE("group construction rejects bad moduli") {
  CHECK_THROWS_AS(build_group({5, 13}, 13), InvalidModulus);
  CHECK_THROWS_AS(build_group({5}, 9), InvalidModulus);
  CHECK_THROWS_AS(build_group({5}, 2), InvalidModulus);
  CHECK_THROWS_AS(build_group({5}, 13, ResiduePair{13, 1, 1}), InvalidModulus);
  CHECK_NOTHROW(build_group({5}, 13, ResiduePair{13, 0, 5}));
}

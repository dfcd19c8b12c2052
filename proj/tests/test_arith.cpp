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
#include <set>
#include <vector>

#include "doctest.h"
#include "ramcube/arith.hpp"
#include "ramcube/errors.hpp"

using namespace ramcube;

namespace {

const ArithComplex& lps() {
  static const ArithComplex x = build_complex({{5}, 13, std::nullopt});
  return x;
}

const ArithComplex& square_complex() {
  static const ArithComplex x = build_complex({{5, 13}, 3, std::nullopt});
  return x;
}

}  // namespace

TEST_CASE("generator system pairs conjugates") {
  const GeneratorSystem gs = build_generators({5, 13}, build_group({5, 13}, 3));
  REQUIRE(gs.dimension() == 2);
  CHECK(gs.dirs[0].regularity() == 6);
  CHECK(gs.dirs[1].regularity() == 14);
  for (const auto& d : gs.dirs)
    for (int i = 0; i < d.regularity(); ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const int partner = d.partner[ui];
      CHECK(d.partner[static_cast<std::size_t>(partner)] == i);
      CHECK(d.gens[static_cast<std::size_t>(partner)] == conjugate(d.gens[ui]));
      CHECK(norm(d.gens[ui]) == d.prime);
    }
  CHECK_THROWS_AS(build_generators({7}, build_group({7}, 3)), ConstructionError);
}

TEST_CASE("rewriting") {
  const GeneratorSystem gs = build_generators({5}, build_group({5}, 13));
  for (int i = 0; i < 6; ++i) {
    const RewriteResult r = rewrite({0}, {i}, gs);
    CHECK(r.indices == std::vector<int>{i});
    CHECK(r.unit == 1);
  }

  const GeneratorSystem g2 = build_generators({5, 13}, build_group({5, 13}, 3));
  const auto& w1 = g2.dirs[0].gens;
  const auto& w2 = g2.dirs[1].gens;
  int negative_units = 0;
  for (int a = 0; a < 14; ++a)
    for (int b = 0; b < 6; ++b) {
      const RewriteResult r = rewrite({1, 0}, {a, b}, g2);
      const Quaternion lhs = w2[static_cast<std::size_t>(a)] * w1[static_cast<std::size_t>(b)];
      const Quaternion rhs = w1[static_cast<std::size_t>(r.indices[0])] * w2[static_cast<std::size_t>(r.indices[1])];
      CHECK(norm(lhs) == 65);
      CHECK(lhs == (r.unit == 1 ? rhs : negate(rhs)));
      // Independent count of solutions.
      int matches = 0;
      for (const auto& x : w1)
        for (const auto& y : w2)
          if (x * y == lhs || x * y == negate(lhs)) ++matches;
      CHECK(matches == 1);
      if (r.unit == -1) ++negative_units;
    }
  CHECK(negative_units == 48);
  CHECK_THROWS_AS(rewrite({0, 0}, {1, 1}, g2), PreconditionError);
  CHECK_THROWS_AS(rewrite({0}, {6}, g2), PreconditionError);
  CHECK_THROWS_AS(factor({1, 0, 0, 0}, {0}, g2), ConstructionError);
}

TEST_CASE("LPS graph") {
  const ArithComplex& x = lps();
  const CubicalComplex& c = x.complex;
  CHECK(c.dimension() == 1);
  CHECK(c.count(0) == 2184);
  CHECK(x.groups.h.size() == 2184);
  CHECK(x.groups.kind == GroupKind::kPGL2);
  CHECK(c.cell_count(1) == 2184 * 6 / 2);
  CHECK(verify_axioms(c).pass());
  CHECK(verify_parities(c).pass);
  const auto rep = irreducibility_report(c);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0].components == 1);
  CHECK(rep[0].connected_within_parity_classes);
  std::vector<int> degree(c.count(0), 0);
  for (CubeId e = 0; e < c.count(1); ++e) ++degree[c.top(1, 0, e)];
  CHECK(std::all_of(degree.begin(), degree.end(), [](int d) { return d == 6; }));
}

TEST_CASE("square complex for (5, 13)") {
  CHECK(find_smallest_n1({5, 13}) == 3);
  const ArithComplex& x = square_complex();
  const CubicalComplex& c = x.complex;
  CHECK(c.regularity() == std::vector<int>{6, 14});
  const std::size_t v = c.count(0);
  CHECK(v == 48);
  CHECK(c.cell_count(1) == v * 6 / 2);
  CHECK(c.cell_count(2) == v * 14 / 2);
  CHECK(c.cell_count(3) == v * 6 * 14 / 4);
  CHECK(verify_axioms(c).pass());
  CHECK(verify_parities(c).pass);

  for (DirSet d = 1; d < 4; ++d)
    for (int j : dirs_of(d))
      for (CubeId t = 0; t < c.count(d); ++t) CHECK(c.inv(d, j, c.inv(d, j, t)) == t);

  // The two bottom-first paths around every square reach the same vertex.
  for (CubeId s = 0; s < c.count(3); ++s) {
    const CubeId via1 = c.bot(2, 1, c.bot(3, 0, s));
    const CubeId via2 = c.bot(1, 0, c.bot(3, 1, s));
    CHECK(via1 == via2);
  }

  const auto rep = irreducibility_report(c);
  REQUIRE(rep.size() == 4);
  for (const auto& e : rep) {
    CHECK(e.connected_within_parity_classes);
    CHECK(e.components == e.parity_classes);
  }

  for (DirSet d = 0; d < 4; ++d)
    for (std::size_t t = 0; t < x.tuple_count(d); ++t)
      CHECK(x.encode_tuple(d, x.decode_tuple(d, t)) == t);
}

TEST_CASE("disconnected inputs are reported") {
  const ArithComplex small = build_complex({{5}, 3, std::nullopt});
  const CubicalComplex two = disjoint_union(small.complex, small.complex);
  const auto rep = irreducibility_report(two);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0].components == 2);
  CHECK_FALSE(rep[0].connected_within_parity_classes);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(build_complex({{5}, 5, std::nullopt}), InvalidModulus);
  CHECK_THROWS_AS(build_complex({{5, 13}, 13, std::nullopt}), InvalidModulus);
  CHECK_THROWS_AS(build_complex({{5}, 15, std::nullopt}), InvalidModulus);
  CHECK_THROWS_AS(build_complex({{5, 5}, 3, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(build_complex({{}, 3, std::nullopt}), ConfigError);
  CHECK_THROWS_AS(build_complex({{7}, 3, std::nullopt}), ConstructionError);
}

TEST_CASE("girth") {
  CHECK(girth_bound(5, 13) == 5);
  CHECK(girth_bound(5, 13) == static_cast<std::size_t>(std::ceil(2.0 * std::log(169.0 / 4.0) / std::log(5.0))));
  const GirthResult g = girth(lps(), 12);
  REQUIRE(g.girth.has_value());
  CHECK(*g.girth >= 5);
  CHECK(g.bound_met);
  CHECK(g.depth_reached <= 12);
  // Independent oracle: plain BFS girth of the skeleton.
  CHECK(g.girth == skeleton_girth(lps().complex));
  CHECK(*g.girth % 2 == 0);  // bipartite: 5 is a non-residue mod 13

  for (std::int64_t n1 : {3, 7, 11}) {
    CAPTURE(n1);
    const ArithComplex x = build_complex({{5}, n1, std::nullopt});
    const GirthResult gx = girth(x, 12);
    CHECK(gx.girth == skeleton_girth(x.complex));
    CHECK(gx.bound_met);
  }

  const GirthResult shallow = girth(lps(), 1);
  CHECK_FALSE(shallow.girth.has_value());
  CHECK(shallow.lower_bound == 3);
  CHECK_FALSE(shallow.bound_met);
}

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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramcube/complex.hpp"
#include "ramcube/quat.hpp"

namespace ramcube {

// Generators of one direction: the p + 1 quaternions of norm p, the
// conjugation pairing and their classes in H and H'.
struct DirectionGenerators {
  std::int64_t prime = 0;
  std::vector<Quaternion> gens;
  std::vector<int> partner;               // gens[partner[i]] == conjugate(gens[i])
  std::vector<std::uint32_t> image;       // class in H
  std::vector<std::uint32_t> cover_image; // class in H'
  int regularity() const { return static_cast<int>(gens.size()); }
};

struct GeneratorSystem {
  std::vector<DirectionGenerators> dirs;
  int dimension() const { return static_cast<int>(dirs.size()); }
};

// Checks p + 1 generators per prime (ConstructionError otherwise) and
// computes the images in the group tables.
GeneratorSystem build_generators(const std::vector<std::int64_t>& primes,
                                 const FiniteGroupTable& groups);

// A product of one generator per direction, listed in `order`, rewritten
// as u times a product in increasing direction order.
struct RewriteResult {
  std::vector<int> indices;  // per direction, increasing direction order
  int unit = 1;              // +1 or -1
};

// Exhaustive exact search over all index tuples and both units; throws if
// there is no match or more than one.
RewriteResult rewrite(const std::vector<int>& order, const std::vector<int>& indices,
                      const GeneratorSystem& gens);

// Factors a quaternion as u * gens[order[0]][i_0] * ... over the listed
// directions (exhaustive, uniqueness asserted). Returns indices in the
// listed order.
RewriteResult factor(const Quaternion& q, const std::vector<int>& order,
                     const GeneratorSystem& gens);

struct ArithComplexConfig {
  std::vector<std::int64_t> primes;
  std::int64_t n1 = 0;
  // Splitting datum; the lexicographically least one when empty.
  std::optional<ResiduePair> residue;
};

// Vertex of the complex: an element of H together with its per-direction
// word-length parities.
struct GradedVertex {
  std::uint32_t h = 0;
  std::uint32_t parity = 0;
};

struct ArithComplex {
  ArithComplexConfig config;
  FiniteGroupTable groups;
  GeneratorSystem gens;
  std::vector<GradedVertex> vertices;
  // step[j][i][v]: vertex reached from v along the direction-j edge labeled
  // by generator i (right multiplication by its image, parity j flipped).
  std::vector<std::vector<std::vector<std::uint32_t>>> step;
  CubicalComplex complex;
  // Oriented J-cube id = vertex * tuple_count(J) + tuple, with the tuple in
  // mixed radix over the directions of J in increasing order (lowest
  // direction most significant).
  std::size_t tuple_count(DirSet dirs) const;
  std::vector<int> decode_tuple(DirSet dirs, std::size_t tuple) const;
  std::size_t encode_tuple(DirSet dirs, const std::vector<int>& indices) const;

  int dimension() const { return gens.dimension(); }
};

// Builds the complex and verifies the axioms and parities; throws
// ConstructionError naming the failed check when verification fails.
ArithComplex build_complex(const ArithComplexConfig& cfg);

// Same without the final verification (for diagnostics and tests).
ArithComplex build_complex_unchecked(const ArithComplexConfig& cfg);

// Smallest odd prime N1 (starting at 3, up to `limit`) not dividing any
// prime for which the complex builds and verifies.
std::int64_t find_smallest_n1(const std::vector<std::int64_t>& primes,
                              std::int64_t limit = 200,
                              std::int64_t start = 3);

struct ConnectivityEntry {
  int direction = 0;
  DirSet dirs = 0;
  std::size_t vertices = 0;
  std::size_t components = 0;
  // Lower bound forced by the parities of the directions outside I + j,
  // which no edge of the link graph changes.
  std::size_t parity_classes = 0;
  bool connected_within_parity_classes = false;
};

std::vector<ConnectivityEntry> irreducibility_report(const CubicalComplex& x);

struct GirthResult {
  std::optional<std::size_t> girth;  // empty if no collision within depth
  std::size_t depth_reached = 0;
  std::size_t bound = 0;             // ceil(2 log_q(N1^2 / 4))
  bool bound_met = false;            // girth >= bound (or lower bound >= bound)
  std::size_t lower_bound = 0;       // girth > 2 * depth when no collision
};

std::size_t girth_bound(std::int64_t q, std::int64_t n1);

// Breadth-first search in the universal cover (products of generators modulo
// rational scalars) from the identity vertex; the girth is the least
// d1 + d2 over distinct cover vertices at depths d1, d2 with the same image.
GirthResult girth(const ArithComplex& x, std::size_t max_depth);

}  // namespace ramcube

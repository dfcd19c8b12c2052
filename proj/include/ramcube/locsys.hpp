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

#include "ramcube/arith.hpp"
#include "ramcube/complex.hpp"
#include "ramcube/linalg.hpp"

namespace ramcube {

using linalg::CMatrix;

enum class LocalSystemKind { kTrivial, kSymmetricPower, kExternalProduct, kCustom };

// Fiber C^d at every vertex and a transition matrix per oriented edge; the
// transition of a direction-j edge e maps the fiber at bot(e) to the fiber
// at top(e).
class LocalSystem {
 public:
  LocalSystem() = default;
  // Identity transitions on every edge of x.
  LocalSystem(const CubicalComplex& x, std::size_t fiber_dim);

  std::size_t fiber_dim() const { return fiber_dim_; }
  int dimension() const { return static_cast<int>(maps_.size()); }
  const CMatrix& transition(int j, CubeId edge) const {
    return maps_[static_cast<std::size_t>(j)][edge];
  }
  void set_transition(int j, CubeId edge, CMatrix m);
  std::size_t edge_count(int j) const { return maps_[static_cast<std::size_t>(j)].size(); }

  LocalSystemKind kind = LocalSystemKind::kCustom;
  std::string description;
  int weight = 0;  // k for symmetric powers

  // True when every transition has zero imaginary part.
  bool is_real(double tol = 0.0) const;

 private:
  std::size_t fiber_dim_ = 0;
  std::vector<std::vector<CMatrix>> maps_;  // [direction][oriented edge]
};

LocalSystem trivial_system(const CubicalComplex& x, std::size_t fiber_dim = 1);

// k-th symmetric power of the 2-dimensional representation of q / sqrt(Nm q)
// in the orthonormal basis x^m y^(k-m) sqrt(C(k,m)); (k+1) x (k+1), unitary.
CMatrix symm_rep(const Quaternion& q, int k);

// Unitary C with C symm_rep(q, k) C^* real for every q (k even). Columns of
// C^* are an orthonormal basis of the real form of the representation.
CMatrix real_structure_basis(int k);

// Constant change of fiber basis: L_e -> C L_e C^*.
LocalSystem change_fiber_basis(const LocalSystem& l, const CMatrix& c);

// Section H -> H': the lexicographic lift, or one where each class is
// replaced by its negative with probability 1/2 (fixed seed).
std::vector<std::uint32_t> canonical_section(const FiniteGroupTable& groups);
std::vector<std::uint32_t> perturbed_section(const FiniteGroupTable& groups,
                                             std::uint64_t seed);

// True for even k; for odd k, true iff -1 is not in the subgroup of
// (Z/2N1)^x generated by the primes.
bool central_condition_check(const std::vector<std::int64_t>& primes, std::int64_t n1,
                             int k);

// +1 if s(v) times the H'-image of the generator equals s(top e) in H',
// -1 if it equals its negative.
int edge_sign(const ArithComplex& x, const std::vector<std::uint32_t>& section, int j,
              int i, std::uint32_t v);

struct SymmRepSpec {
  int k = 0;
  // For even k, express transitions in the real basis of the real form.
  bool real_basis = false;
};

// Transition of the direction-j edge (v, i): eps^k symm_rep(conjugate(w_ji), k).
LocalSystem build_symm_system(const ArithComplex& x, const SymmRepSpec& spec,
                              const std::vector<std::uint32_t>* section = nullptr);

struct FlatnessReport {
  double max_residual = 0.0;        // operator norm, over all oriented squares
  std::optional<OrientedCube> witness;
  double unitarity_residual = 0.0;  // max |L L^* - I|
  double inverse_residual = 0.0;    // max |L_{inv e} L_e - I|
  bool flat(double tol) const { return max_residual <= tol; }
};

FlatnessReport verify_flatness(const CubicalComplex& x, const LocalSystem& l);

// Local system on product(x, y): tensor-product fibers; a direction from x
// acts as L1 (x) Id, one from y as Id (x) L2.
LocalSystem external_product(const CubicalComplex& x, const LocalSystem& l1,
                             const CubicalComplex& y, const LocalSystem& l2);

}  // namespace ramcube

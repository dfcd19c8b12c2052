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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ramcube {

// Integer (Lipschitz) quaternion a0 + a1 i + a2 j + a3 k with i^2 = j^2 =
// k^2 = -1 and ij = k.
struct Quaternion {
  std::int64_t a0 = 0;
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  std::int64_t a3 = 0;

  friend bool operator==(const Quaternion&, const Quaternion&) = default;
  friend auto operator<=>(const Quaternion&, const Quaternion&) = default;
};

std::int64_t norm(const Quaternion& q);
Quaternion conjugate(const Quaternion& q);
Quaternion multiply(const Quaternion& x, const Quaternion& y);
inline Quaternion operator*(const Quaternion& x, const Quaternion& y) {
  return multiply(x, y);
}
Quaternion negate(const Quaternion& q);
std::string to_string(const Quaternion& q);

bool is_prime(std::int64_t n);

// All quaternions of norm p with a0 odd and positive and a1, a2, a3 even,
// in lexicographic order of (a0, a1, a2, a3). For p = 1 mod 4 there are
// exactly p + 1 of them; for p = 3 mod 4 the list is empty. Throws for p
// not an odd prime.
std::vector<Quaternion> enumerate_generators(std::int64_t p);

// (x, y) with x^2 + y^2 + 1 = 0 mod n1. Scans y ascending, then x, so the
// result has the least y and, among those, the least x.
struct ResiduePair {
  std::int64_t modulus = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
};
ResiduePair solve_residue(std::int64_t n1);

// 2x2 matrix over Z/n, entries (m00, m01, m10, m11) in [0, n).
struct Mat2 {
  std::array<std::int64_t, 4> m{};
  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

Mat2 mat_mul(const Mat2& a, const Mat2& b, std::int64_t n);
std::int64_t mat_det(const Mat2& a, std::int64_t n);
Mat2 mat_scale(const Mat2& a, std::int64_t s, std::int64_t n);
std::string to_string(const Mat2& a);

// Reduction of q into Mat_2(Z/n1) through the splitting (x, y). Ring
// homomorphism with det(embed(q)) = norm(q) mod n1.
Mat2 embed(const Quaternion& q, const ResiduePair& r);

// Lexicographically least (m00, m01, m10, m11) among s * a for s in scalars.
Mat2 canonicalize(const Mat2& a, const std::vector<std::int64_t>& scalars,
                  std::int64_t n);

// Subgroup of (Z/n)^x generated by gens (sorted ascending).
std::vector<std::int64_t> cyclic_span(const std::vector<std::int64_t>& gens,
                                      std::int64_t n);

// A finite projective matrix group: matrices with det in `dets`, modulo the
// scalar subgroup `scalars`, each stored in canonical form.
class ProjGroup {
 public:
  ProjGroup() = default;
  ProjGroup(std::int64_t n, std::vector<std::int64_t> dets,
            std::vector<std::int64_t> scalars);

  std::int64_t modulus() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const Mat2& element(std::uint32_t i) const { return elements_[i]; }
  const std::vector<std::int64_t>& scalars() const { return scalars_; }
  const std::vector<std::int64_t>& determinants() const { return dets_; }

  // Index of the class of an arbitrary matrix with admissible determinant.
  std::uint32_t index_of(const Mat2& a) const;
  bool contains(const Mat2& a) const;
  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inverse(std::uint32_t a) const;
  std::uint32_t identity() const { return identity_; }

 private:
  static std::uint64_t key(const Mat2& a, std::int64_t n);

  std::int64_t n_ = 0;
  std::vector<std::int64_t> dets_;
  std::vector<std::int64_t> scalars_;
  std::vector<Mat2> elements_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::uint32_t identity_ = 0;
};

enum class GroupKind { kPGL2, kPSL2, kSL2 };
std::string to_string(GroupKind k);

// The pair H = {det in A}/B and its cover H' = {det in A}/B' with
// A = <p_j mod n1>, B = <p_j, -1>, B' = <p_j>, the quotient H' -> H and the
// section s(h) = class in H' of the canonical matrix of h.
struct FiniteGroupTable {
  std::int64_t n1 = 0;
  ResiduePair residue;
  std::vector<std::int64_t> det_subgroup;
  ProjGroup h;
  ProjGroup cover;
  std::vector<std::uint32_t> quotient;  // cover -> h
  std::vector<std::uint32_t> section;   // h -> cover
  GroupKind kind = GroupKind::kPGL2;

  std::size_t kernel_order() const { return cover.size() / h.size(); }
};

// Expected type from the quadratic-residue criterion: PGL2 if some prime is
// a non-residue mod n1; otherwise SL2-sized if -1 is in <p_j>, else PSL2.
GroupKind predicted_group_kind(const std::vector<std::int64_t>& primes,
                               std::int64_t n1);

FiniteGroupTable build_group(const std::vector<std::int64_t>& primes,
                             std::int64_t n1,
                             std::optional<ResiduePair> residue = std::nullopt);

}  // namespace ramcube

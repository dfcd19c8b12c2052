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

#include "ramcube/locsys.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ramcube/errors.hpp"

namespace ramcube {

using linalg::cplx;

LocalSystem::LocalSystem(const CubicalComplex& x, std::size_t fiber_dim)
    : fiber_dim_(fiber_dim) {
  maps_.resize(static_cast<std::size_t>(x.dimension()));
  const CMatrix id = CMatrix::identity(fiber_dim);
  for (int j = 0; j < x.dimension(); ++j)
    maps_[static_cast<std::size_t>(j)].assign(x.count(1u << j), id);
}

void LocalSystem::set_transition(int j, CubeId edge, CMatrix m) {
  if (m.rows() != fiber_dim_ || m.cols() != fiber_dim_)
    throw PreconditionError("set_transition: wrong fiber dimension");
  maps_.at(static_cast<std::size_t>(j)).at(edge) = std::move(m);
}

bool LocalSystem::is_real(double tol) const {
  for (const auto& per_dir : maps_)
    for (const CMatrix& m : per_dir)
      for (const cplx& v : m.values())
        if (std::abs(v.imag()) > tol) return false;
  return true;
}

LocalSystem trivial_system(const CubicalComplex& x, std::size_t fiber_dim) {
  LocalSystem l(x, fiber_dim);
  l.kind = LocalSystemKind::kTrivial;
  l.description = "trivial(" + std::to_string(fiber_dim) + ")";
  return l;
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients (index = power of x) of a product of linear forms a x + b.
std::vector<cplx> poly_mul_linear(const std::vector<cplx>& p, cplx a, cplx b) {
  std::vector<cplx> out(p.size() + 1, cplx(0.0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += p[i] * b;
    out[i + 1] += p[i] * a;
  }
  return out;
}

}  // namespace

CMatrix symm_rep(const Quaternion& q, int k) {
  if (k < 0) throw PreconditionError("symm_rep: negative weight");
  const std::int64_t nm = norm(q);
  if (nm == 0) throw PreconditionError("symm_rep: zero quaternion");
  const double s = 1.0 / std::sqrt(static_cast<double>(nm));
  const cplx m00 = cplx(double(q.a0), double(q.a1)) * s;
  const cplx m01 = cplx(double(q.a2), double(q.a3)) * s;
  const cplx m10 = cplx(double(-q.a2), double(q.a3)) * s;
  const cplx m11 = cplx(double(q.a0), double(-q.a1)) * s;
  CMatrix r(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(k + 1));
  for (int m = 0; m <= k; ++m) {
    // Image of x^m y^(k-m) under (x, y) -> (x m00 + y m10, x m01 + y m11).
    std::vector<cplx> p{cplx(1.0)};
    for (int t = 0; t < m; ++t) p = poly_mul_linear(p, m00, m10);
    for (int t = 0; t < k - m; ++t) p = poly_mul_linear(p, m01, m11);
    for (int n = 0; n <= k; ++n)
      r(static_cast<std::size_t>(n), static_cast<std::size_t>(m)) =
          p[static_cast<std::size_t>(n)] * std::sqrt(binomial(k, m) / binomial(k, n));
  }
  return r;
}

CMatrix real_structure_basis(int k) {
  if (k < 0 || k % 2 != 0) throw PreconditionError("real_structure_basis: k must be even");
  const std::size_t d = static_cast<std::size_t>(k + 1);
  // Conjugate-linear J e_m = (-1)^(k-m) e_(k-m) commutes with symm_rep; the
  // columns of b span its fixed points.
  CMatrix b(d, d);
  const double h = 1.0 / std::sqrt(2.0);
  std::size_t col = 0;
  for (int m = 0; 2 * m < k; ++m) {
    const double sg = ((k - m) % 2 == 0) ? 1.0 : -1.0;
    const auto lo = static_cast<std::size_t>(m);
    const auto hi = static_cast<std::size_t>(k - m);
    b(lo, col) = h;
    b(hi, col) = sg * h;
    ++col;
    b(lo, col) = cplx(0.0, h);
    b(hi, col) = cplx(0.0, -sg * h);
    ++col;
  }
  const int mid = k / 2;
  b(static_cast<std::size_t>(mid), col) = (mid % 2 == 0) ? cplx(1.0) : cplx(0.0, 1.0);
  return b.adjoint();
}

LocalSystem change_fiber_basis(const LocalSystem& l, const CMatrix& c) {
  LocalSystem out = l;
  const CMatrix ca = c.adjoint();
  for (int j = 0; j < l.dimension(); ++j)
    for (CubeId e = 0; e < l.edge_count(j); ++e)
      out.set_transition(j, e, c * l.transition(j, e) * ca);
  return out;
}

std::vector<std::uint32_t> canonical_section(const FiniteGroupTable& groups) {
  return groups.section;
}

std::vector<std::uint32_t> perturbed_section(const FiniteGroupTable& groups,
                                             std::uint64_t seed) {
  std::vector<std::uint32_t> s = groups.section;
  std::mt19937_64 rng(seed);
  const std::int64_t n = groups.n1;
  for (std::uint32_t h = 0; h < s.size(); ++h) {
    if ((rng() & 1u) == 0) continue;
    s[h] = groups.cover.index_of(mat_scale(groups.cover.element(s[h]), n - 1, n));
  }
  return s;
}

bool central_condition_check(const std::vector<std::int64_t>& primes, std::int64_t n1,
                             int k) {
  if (k % 2 == 0) return true;
  const std::int64_t m = 2 * n1;
  std::vector<std::int64_t> gens;
  for (std::int64_t p : primes) gens.push_back(((p % m) + m) % m);
  const auto span = cyclic_span(gens, m);
  return !std::binary_search(span.begin(), span.end(), m - 1);
}

int edge_sign(const ArithComplex& x, const std::vector<std::uint32_t>& section, int j,
              int i, std::uint32_t v) {
  const auto& d = x.gens.dirs[static_cast<std::size_t>(j)];
  const std::uint32_t w = x.step[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][v];
  const std::uint32_t lhs =
      x.groups.cover.multiply(section[x.vertices[v].h], d.cover_image[static_cast<std::size_t>(i)]);
  const std::uint32_t rhs = section[x.vertices[w].h];
  if (lhs == rhs) return 1;
  const std::int64_t n = x.groups.n1;
  const std::uint32_t neg = x.groups.cover.index_of(mat_scale(x.groups.cover.element(rhs), n - 1, n));
  if (lhs != neg) throw ConstructionError("edge_sign: section values differ by a non-sign");
  return -1;
}

LocalSystem build_symm_system(const ArithComplex& x, const SymmRepSpec& spec,
                              const std::vector<std::uint32_t>* section) {
  if (spec.k < 0) throw ConstructionError("weight k must be nonnegative");
  if (!central_condition_check(x.config.primes, x.config.n1, spec.k))
    throw ConstructionError("central condition fails: k = " + std::to_string(spec.k) +
                            " is odd and -1 lies in the subgroup generated by the primes mod 2N1");
  const std::vector<std::uint32_t>& s = section != nullptr ? *section : x.groups.section;
  if (s.size() != x.groups.h.size()) throw PreconditionError("section has wrong size");
  const auto dim = static_cast<std::size_t>(spec.k + 1);
  LocalSystem l(x.complex, dim);
  l.kind = LocalSystemKind::kSymmetricPower;
  l.weight = spec.k;
  l.description = "symm(" + std::to_string(spec.k) + ")";
  const bool real = spec.real_basis && spec.k % 2 == 0;
  const CMatrix c = real ? real_structure_basis(spec.k) : CMatrix::identity(dim);
  const CMatrix ca = c.adjoint();
  for (int j = 0; j < x.dimension(); ++j) {
    const auto& d = x.gens.dirs[static_cast<std::size_t>(j)];
    const auto r = static_cast<std::size_t>(d.regularity());
    std::vector<CMatrix> base;
    for (std::size_t i = 0; i < r; ++i) {
      CMatrix m = symm_rep(conjugate(d.gens[i]), spec.k);
      if (real) {
        m = c * m * ca;
        // The real form is exact up to rounding; drop the residue.
        CMatrix cleaned(dim, dim);
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b < dim; ++b) {
            if (std::abs(m(a, b).imag()) > 1e-12)
              throw NumericalError("real_structure_basis does not reduce symm_rep");
            cleaned(a, b) = m(a, b).real();
          }
        m = cleaned;
      }
      base.push_back(std::move(m));
    }
    const std::vector<CMatrix> negated = [&] {
      std::vector<CMatrix> out;
      for (const CMatrix& m : base) out.push_back(m * cplx(-1.0));
      return out;
    }();
    for (std::uint32_t v = 0; v < x.vertices.size(); ++v)
      for (std::size_t i = 0; i < r; ++i) {
        const int eps = spec.k % 2 == 0 ? 1 : edge_sign(x, s, j, static_cast<int>(i), v);
        l.set_transition(j, static_cast<CubeId>(v * r + i), eps > 0 ? base[i] : negated[i]);
      }
  }
  return l;
}

FlatnessReport verify_flatness(const CubicalComplex& x, const LocalSystem& l) {
  FlatnessReport rep;
  const std::size_t d = l.fiber_dim();
  const CMatrix id = CMatrix::identity(d);
  for (int j = 0; j < x.dimension(); ++j)
    for (CubeId e = 0; e < x.count(1u << j); ++e) {
      const CMatrix& m = l.transition(j, e);
      rep.unitarity_residual = std::max(rep.unitarity_residual, linalg::max_abs(m * m.adjoint() - id));
      const CMatrix& back = l.transition(j, x.inv(1u << j, j, e));
      rep.inverse_residual = std::max(rep.inverse_residual, linalg::max_abs(back * m - id));
    }
  const DirSet all = x.all_dirs();
  for (DirSet dirs = 0; dirs <= all; ++dirs) {
    if (dir_count(dirs) == 2) {
      const std::vector<int> js = dirs_of(dirs);
      const int a = js[0];
      const int b = js[1];
      for (CubeId c = 0; c < x.count(dirs); ++c) {
        // bot_b(c) is the a-edge at the origin, top_a(c) the b-edge at its end.
        const CMatrix p1 = l.transition(b, x.top(dirs, a, c)) * l.transition(a, x.bot(dirs, b, c));
        const CMatrix p2 = l.transition(a, x.top(dirs, b, c)) * l.transition(b, x.bot(dirs, a, c));
        const CMatrix diff = p1 - p2;
        if (linalg::max_abs(diff) == 0.0) continue;
        const double res = linalg::operator_norm(diff);
        if (res > rep.max_residual) {
          rep.max_residual = res;
          rep.witness = OrientedCube{dirs, c};
        }
      }
    }
    if (dirs == all) break;
  }
  return rep;
}

LocalSystem external_product(const CubicalComplex& x, const LocalSystem& l1,
                             const CubicalComplex& y, const LocalSystem& l2) {
  const CubicalComplex z = product(x, y);
  LocalSystem out(z, l1.fiber_dim() * l2.fiber_dim());
  const CMatrix id1 = CMatrix::identity(l1.fiber_dim());
  const CMatrix id2 = CMatrix::identity(l2.fiber_dim());
  const int gx = x.dimension();
  for (int j = 0; j < z.dimension(); ++j) {
    if (j < gx) {
      const std::size_t n2 = y.vertex_count();
      for (CubeId a = 0; a < x.count(1u << j); ++a)
        for (CubeId b = 0; b < n2; ++b)
          out.set_transition(j, static_cast<CubeId>(a * n2 + b),
                             linalg::kronecker(l1.transition(j, a), id2));
    } else {
      const int jy = j - gx;
      const std::size_t n2 = y.count(1u << jy);
      for (CubeId a = 0; a < x.vertex_count(); ++a)
        for (CubeId b = 0; b < n2; ++b)
          out.set_transition(j, static_cast<CubeId>(a * n2 + b),
                             linalg::kronecker(id1, l2.transition(jy, b)));
    }
  }
  const bool trivial = l1.kind == LocalSystemKind::kTrivial && l2.kind == LocalSystemKind::kTrivial;
  out.kind = trivial ? LocalSystemKind::kTrivial : LocalSystemKind::kExternalProduct;
  out.description = l1.description + " x " + l2.description;
  return out;
}

}  // namespace ramcube

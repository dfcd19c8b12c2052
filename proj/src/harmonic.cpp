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

#include "ramcube/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>

#include "ramcube/errors.hpp"

namespace ramcube {

CochainSpace::CochainSpace(const CubicalComplex& x, const LocalSystem& l) : x_(&x), l_(&l) {
  if (l.dimension() != x.dimension())
    throw PreconditionError("local system and complex differ in dimension");
  for (int j = 0; j < x.dimension(); ++j)
    if (l.edge_count(j) != x.count(1u << j))
      throw PreconditionError("local system does not match the complex");
  if (!x.orientation_consistent())
    throw PreconditionError("cochains need consistent orientations (check the axioms)");
  const DirSet all = x.all_dirs();
  transport_.resize(static_cast<std::size_t>(all) + 1);
  const CMatrix id = CMatrix::identity(fiber());
  for (DirSet dirs = 0; dirs <= all; ++dirs) {
    auto& tr = transport_[dirs];
    tr.assign(x.count(dirs), CMatrix());
    std::vector<char> done(x.count(dirs), 0);
    const std::vector<int> js = dirs_of(dirs);
    for (std::size_t u = 0; u < x.cell_count(dirs); ++u) {
      const CubeId c0 = x.canonical(dirs, u);
      tr[c0] = id;
      done[c0] = 1;
      std::deque<CubeId> q{c0};
      while (!q.empty()) {
        const CubeId c = q.front();
        q.pop_front();
        for (int j : js) {
          const CubeId d = x.inv(dirs, j, c);
          const CMatrix cand = (edge_transition(dirs, c, j) * tr[c]) * cplx(-1.0);
          if (!done[d]) {
            done[d] = 1;
            tr[d] = cand;
            q.push_back(d);
          } else {
            inconsistency_ = std::max(inconsistency_, linalg::max_abs(tr[d] - cand));
          }
        }
      }
    }
  }
}

std::vector<DirSet> CochainSpace::level_sets(int i) const {
  std::vector<DirSet> out;
  const DirSet all = x_->all_dirs();
  for (DirSet dirs = 0; dirs <= all; ++dirs)
    if (dir_count(dirs) == i) out.push_back(dirs);
  return out;
}

std::size_t CochainSpace::level_dim(int i) const {
  std::size_t n = 0;
  for (DirSet dirs : level_sets(i)) n += dim(dirs);
  return n;
}

std::size_t CochainSpace::level_offset(DirSet dirs) const {
  std::size_t off = 0;
  for (DirSet d : level_sets(dir_count(dirs))) {
    if (d == dirs) return off;
    off += dim(d);
  }
  return off;
}

const CMatrix& CochainSpace::edge_transition(DirSet dirs, CubeId c, int j) const {
  return l_->transition(j, x_->edge_at_origin(dirs, c, j));
}

const CMatrix& CochainSpace::edge_transition_inverse(DirSet dirs, CubeId c, int j) const {
  const CubeId e = x_->edge_at_origin(dirs, c, j);
  return l_->transition(j, x_->inv(1u << j, j, e));
}

namespace {

void add_block(std::vector<Triplet>& t, std::size_t row_cell, std::size_t col_cell,
               std::size_t d, const CMatrix& m, cplx s = 1.0) {
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const cplx v = s * m(a, b);
      if (v != cplx(0.0))
        t.push_back({static_cast<std::uint32_t>(row_cell * d + a),
                     static_cast<std::uint32_t>(col_cell * d + b), v});
    }
}

int position_in(DirSet dirs, int j) { return dir_count(dirs & ((1u << j) - 1u)); }

}  // namespace

SparseMatrix partial_boundary(const CochainSpace& cs, int j, DirSet dirs) {
  const CubicalComplex& x = cs.complex();
  const std::size_t d = cs.fiber();
  if (has_dir(dirs, j)) return SparseMatrix(cs.dim(dirs), cs.dim(dirs));
  const DirSet upper = with_dir(dirs, j);
  std::vector<Triplet> t;
  for (std::size_t u = 0; u < x.cell_count(upper); ++u) {
    const CubeId c = x.canonical(upper, u);
    const CubeId top = x.top(upper, j, c);
    const CubeId bot = x.bot(upper, j, c);
    add_block(t, u, x.cell_of(dirs, top), d,
              cs.edge_transition_inverse(upper, c, j) * cs.transport(dirs, top));
    add_block(t, u, x.cell_of(dirs, bot), d, cs.transport(dirs, bot), -1.0);
  }
  SparseMatrix m = SparseMatrix::from_triplets(cs.dim(upper), cs.dim(dirs), std::move(t));
  m.label = "partial_boundary";
  return m;
}

SparseMatrix partial_coboundary(const CochainSpace& cs, int j, DirSet dirs) {
  const CubicalComplex& x = cs.complex();
  const std::size_t d = cs.fiber();
  if (has_dir(dirs, j)) return SparseMatrix(cs.dim(dirs), cs.dim(dirs));
  const DirSet upper = with_dir(dirs, j);
  std::vector<Triplet> t;
  for (CubeId c = 0; c < x.count(upper); ++c) {
    const CubeId s = x.top(upper, j, c);
    if (!x.is_canonical(dirs, s)) continue;
    add_block(t, x.cell_of(dirs, s), x.cell_of(upper, c), d,
              cs.edge_transition(upper, c, j) * cs.transport(upper, c));
  }
  SparseMatrix m = SparseMatrix::from_triplets(cs.dim(dirs), cs.dim(upper), std::move(t));
  m.label = "partial_coboundary";
  return m;
}

SparseMatrix total_d(const CochainSpace& cs, int i) {
  const int g = cs.complex().dimension();
  const std::size_t cols = (i >= 0 && i <= g) ? cs.level_dim(i) : 0;
  if (i < 0 || i >= g) return SparseMatrix(i + 1 <= g && i + 1 >= 0 ? cs.level_dim(i + 1) : 0, cols);
  std::vector<Triplet> t;
  for (DirSet dirs : cs.level_sets(i))
    for (int j = 0; j < g; ++j) {
      if (has_dir(dirs, j)) continue;
      const DirSet upper = with_dir(dirs, j);
      const double sign = position_in(upper, j) % 2 == 0 ? 1.0 : -1.0;
      append_block(t, partial_boundary(cs, j, dirs), cs.level_offset(upper),
                   cs.level_offset(dirs), sign);
    }
  SparseMatrix m = SparseMatrix::from_triplets(cs.level_dim(i + 1), cols, std::move(t));
  m.label = "d";
  return m;
}

SparseMatrix total_dstar(const CochainSpace& cs, int i) {
  const int g = cs.complex().dimension();
  const std::size_t rows = (i >= 0 && i <= g) ? cs.level_dim(i) : 0;
  if (i < 0 || i >= g) return SparseMatrix(rows, i + 1 <= g && i + 1 >= 0 ? cs.level_dim(i + 1) : 0);
  std::vector<Triplet> t;
  for (DirSet dirs : cs.level_sets(i))
    for (int j = 0; j < g; ++j) {
      if (has_dir(dirs, j)) continue;
      const DirSet upper = with_dir(dirs, j);
      const double sign = position_in(upper, j) % 2 == 0 ? 1.0 : -1.0;
      append_block(t, partial_coboundary(cs, j, dirs), cs.level_offset(dirs),
                   cs.level_offset(upper), sign);
    }
  SparseMatrix m = SparseMatrix::from_triplets(rows, cs.level_dim(i + 1), std::move(t));
  m.label = "d*";
  return m;
}

SparseMatrix laplacian(const CochainSpace& cs, int j, DirSet dirs) {
  SparseMatrix m;
  if (!has_dir(dirs, j)) {
    m = partial_coboundary(cs, j, dirs) * partial_boundary(cs, j, dirs);
  } else {
    const DirSet lower = without_dir(dirs, j);
    m = partial_boundary(cs, j, lower) * partial_coboundary(cs, j, lower);
  }
  m.label = "box_partial";
  return m;
}

SparseMatrix total_laplacian(const CochainSpace& cs, int i) {
  const int g = cs.complex().dimension();
  const std::size_t n = cs.level_dim(i);
  SparseMatrix m(n, n);
  if (i > 0) m = m + total_d(cs, i - 1) * total_dstar(cs, i - 1);
  if (i < g) m = m + total_dstar(cs, i) * total_d(cs, i);
  m.label = "box_total";
  return m;
}

SparseMatrix star_matrix(const CochainSpace& cs, int j, DirSet dirs) {
  const CubicalComplex& x = cs.complex();
  const LinkGraph g = link_graph(x, j, dirs);
  const DirSet upper = with_dir(dirs, j);
  const std::size_t d = cs.fiber();
  std::vector<Triplet> t;
  for (const auto& e : g.edges)
    add_block(t, e.terminus, e.origin, d, cs.edge_transition(upper, e.cube, j));
  SparseMatrix m = SparseMatrix::from_triplets(cs.dim(dirs), cs.dim(dirs), std::move(t));
  m.label = "star";
  return m;
}

double hermitian_deviation(const SparseMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(m, m.adjoint());
}

namespace {

void check_hermitian(const SparseMatrix& m, const SpectrumOptions& opt) {
  if (m.rows() != m.cols()) throw PreconditionError("spectrum: matrix not square");
  if (m.rows() > opt.max_dim)
    throw NumericalError("spectrum: dimension " + std::to_string(m.rows()) +
                         " exceeds the cap " + std::to_string(opt.max_dim));
  const double dev = hermitian_deviation(m);
  if (dev > opt.hermitian_tol * std::max(1.0, m.max_abs()))
    throw PreconditionError("spectrum: matrix is not Hermitian (deviation " +
                            std::to_string(dev) + ")");
}

}  // namespace

std::vector<double> spectrum(const SparseMatrix& m, const SpectrumOptions& opt) {
  check_hermitian(m, opt);
  std::vector<double> ev;
  if (m.is_real()) {
    ev = linalg::symmetric_eigenvalues(m.to_dense_real());
  } else {
    const std::vector<double> doubled = linalg::symmetric_eigenvalues(m.to_dense_realified());
    for (std::size_t i = 0; i < doubled.size(); i += 2) ev.push_back(doubled[i]);
  }
  std::reverse(ev.begin(), ev.end());
  return ev;
}

EigenPairs eigen_decompose(const SparseMatrix& m, const SpectrumOptions& opt) {
  check_hermitian(m, opt);
  EigenPairs out;
  out.realified = !m.is_real();
  auto ed = linalg::symmetric_eigen(out.realified ? m.to_dense_realified() : m.to_dense_real());
  out.values = std::move(ed.values);
  out.vectors = std::move(ed.vectors);
  return out;
}

RamanujanVerdict classify_ramanujan(const std::vector<double>& eigs, int r, double tol) {
  RamanujanVerdict v;
  v.regularity = r;
  v.bound = 2.0 * std::sqrt(static_cast<double>(r - 1));
  for (double e : eigs) {
    if (std::abs(e - r) <= tol * r) {
      ++v.multiplicity_plus;
    } else if (std::abs(e + r) <= tol * r) {
      ++v.multiplicity_minus;
    } else {
      ++v.nontrivial;
      v.mu = std::max(v.mu, std::abs(e));
    }
  }
  v.gap = r - v.mu;
  v.ramanujan = v.mu <= v.bound + tol;
  return v;
}

namespace {

// Applies f to real coordinates of c: the real and imaginary parts
// separately for real operators, or the stacked [Re; Im] vector otherwise.
template <typename F>
std::vector<cplx> in_real_coordinates(const std::vector<cplx>& c, bool realified, F&& f) {
  const std::size_t n = c.size();
  std::vector<cplx> out(n);
  if (realified) {
    std::vector<double> x(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = c[i].real();
      x[i + n] = c[i].imag();
    }
    const std::vector<double> y = f(x);
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx(y[i], y[i + n]);
  } else {
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = c[i].real();
      im[i] = c[i].imag();
    }
    const std::vector<double> yr = f(re);
    const std::vector<double> yi = f(im);
    for (std::size_t i = 0; i < n; ++i) out[i] = cplx(yr[i], yi[i]);
  }
  return out;
}

std::vector<cplx> conjugate_gradient(const SparseMatrix& a, const SparseMatrix& b,
                                     const std::vector<cplx>& rhs, double tol) {
  // Solves (a b) x = rhs for Hermitian positive semidefinite a b with rhs in
  // its range.
  const std::size_t n = rhs.size();
  std::vector<cplx> x(n, 0.0), r = rhs, p = rhs;
  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) return x;
  double rr = std::real(inner(r, r));
  const std::size_t max_iter = 20 * n + 100;
  for (std::size_t it = 0; it < max_iter && std::sqrt(rr) > tol * bnorm; ++it) {
    const std::vector<cplx> ap = a.apply(b.apply(p));
    const double pap = std::real(inner(p, ap));
    if (pap <= 0.0) break;
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = std::real(inner(r, r));
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  return x;
}

}  // namespace

HodgeParts hodge_project(const CochainSpace& cs, int i, const std::vector<cplx>& c,
                         const HodgeOptions& opt) {
  const int g = cs.complex().dimension();
  const std::size_t n = cs.level_dim(i);
  if (c.size() != n) throw PreconditionError("hodge_project: cochain has wrong size");
  HodgeParts parts;
  const bool has_lower = i > 0;
  const bool has_upper = i < g;
  HodgeMethod method = opt.method;
  if (method == HodgeMethod::kAuto) {
    const std::size_t real_dim = cs.system().is_real() ? n : 2 * n;
    method = real_dim <= opt.dense_cap ? HodgeMethod::kEigen : HodgeMethod::kIterative;
  }
  parts.method = method;

  if (method == HodgeMethod::kEigen) {
    const SparseMatrix box = total_laplacian(cs, i);
    const EigenPairs ep = eigen_decompose(box, {std::max<std::size_t>(n, 1), 1e-10});
    const std::size_t m = ep.values.size();
    const double top = m > 0 ? std::abs(ep.values.back()) : 0.0;
    const double thr = opt.kernel_tol * std::max(1.0, top);
    auto project = [&](bool kernel) {
      return [&, kernel](const std::vector<double>& x) {
        std::vector<double> y(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
          const bool in_kernel = ep.values[k] <= thr;
          if (in_kernel != kernel) continue;
          const double* u = ep.vectors.col(k);
          double s = 0.0;
          for (std::size_t a = 0; a < m; ++a) s += u[a] * x[a];
          if (!kernel) s /= ep.values[k];
          for (std::size_t a = 0; a < m; ++a) y[a] += s * u[a];
        }
        return y;
      };
    };
    parts.harmonic = in_real_coordinates(c, ep.realified, project(true));
    const std::vector<cplx> inv = in_real_coordinates(c, ep.realified, project(false));
    parts.exact = has_lower ? (total_d(cs, i - 1) * total_dstar(cs, i - 1)).apply(inv)
                            : std::vector<cplx>(n, 0.0);
    parts.coexact = has_upper ? (total_dstar(cs, i) * total_d(cs, i)).apply(inv)
                              : std::vector<cplx>(n, 0.0);
    return parts;
  }

  parts.exact.assign(n, 0.0);
  parts.coexact.assign(n, 0.0);
  if (has_lower) {
    const SparseMatrix dl = total_d(cs, i - 1);
    const SparseMatrix dls = total_dstar(cs, i - 1);
    const std::vector<cplx> xl = conjugate_gradient(dls, dl, dls.apply(c), opt.cg_tol);
    parts.exact = dl.apply(xl);
  }
  if (has_upper) {
    const SparseMatrix du = total_d(cs, i);
    const SparseMatrix dus = total_dstar(cs, i);
    const std::vector<cplx> yu = conjugate_gradient(du, dus, du.apply(c), opt.cg_tol);
    parts.coexact = dus.apply(yu);
  }
  parts.harmonic.resize(n);
  for (std::size_t k = 0; k < n; ++k) parts.harmonic[k] = c[k] - parts.exact[k] - parts.coexact[k];
  return parts;
}

namespace {

std::size_t rank_of(const SparseMatrix& m, double rel_tol, std::size_t max_dim) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (std::min(m.rows(), m.cols()) > max_dim)
    throw NumericalError("rank: dimension exceeds the cap " + std::to_string(max_dim));
  if (m.is_real()) return linalg::numerical_rank(m.to_dense_real(), rel_tol);
  return linalg::numerical_rank(m.to_dense_realified(), rel_tol) / 2;
}

}  // namespace

std::vector<std::size_t> cohomology_dims(const CochainSpace& cs, double rel_tol,
                                         std::size_t max_dim) {
  const int g = cs.complex().dimension();
  std::vector<std::size_t> ranks(static_cast<std::size_t>(g), 0);
  for (int i = 0; i < g; ++i) ranks[static_cast<std::size_t>(i)] = rank_of(total_d(cs, i), rel_tol, max_dim);
  std::vector<std::size_t> h;
  for (int i = 0; i <= g; ++i) {
    std::size_t v = cs.level_dim(i);
    if (i < g) v -= ranks[static_cast<std::size_t>(i)];
    if (i > 0) v -= ranks[static_cast<std::size_t>(i - 1)];
    h.push_back(v);
  }
  return h;
}

std::vector<std::size_t> harmonic_dims(const CochainSpace& cs, double tol, std::size_t max_dim) {
  std::vector<std::size_t> h;
  for (int i = 0; i <= cs.complex().dimension(); ++i) {
    const std::vector<double> ev = spectrum(total_laplacian(cs, i), {max_dim, 1e-10});
    const double top = ev.empty() ? 0.0 : std::abs(ev.front());
    const double thr = tol * std::max(1.0, top);
    h.push_back(static_cast<std::size_t>(
        std::count_if(ev.begin(), ev.end(), [thr](double e) { return e <= thr; })));
  }
  return h;
}

std::int64_t euler_characteristic(const CubicalComplex& x, std::size_t fiber) {
  std::int64_t chi = 0;
  const DirSet all = x.all_dirs();
  for (DirSet dirs = 0; dirs <= all; ++dirs) {
    const auto n = static_cast<std::int64_t>(x.cell_count(dirs) * fiber);
    chi += dir_count(dirs) % 2 == 0 ? n : -n;
  }
  return chi;
}

TransferReport compare_nonzero_spectra(std::vector<double> low, std::vector<double> high,
                                       double zero_tol, double tol) {
  auto keep = [zero_tol](std::vector<double>& v) {
    v.erase(std::remove_if(v.begin(), v.end(), [zero_tol](double e) { return std::abs(e) <= zero_tol; }),
            v.end());
    std::sort(v.begin(), v.end());
  };
  keep(low);
  keep(high);
  TransferReport r;
  r.nonzero_low = low.size();
  r.nonzero_high = high.size();
  if (low.size() != high.size()) return r;
  double scale = 1.0;
  for (double e : low) scale = std::max(scale, std::abs(e));
  for (std::size_t k = 0; k < low.size(); ++k)
    r.max_difference = std::max(r.max_difference, std::abs(low[k] - high[k]));
  r.pass = r.max_difference <= tol * scale;
  return r;
}

TransferReport eigenspace_transfer_check(const CochainSpace& cs, int j, DirSet dirs, double tol,
                                         const SpectrumOptions& opt) {
  if (has_dir(dirs, j)) throw PreconditionError("transfer check: j must lie outside I");
  const std::vector<double> low = spectrum(laplacian(cs, j, dirs), opt);
  const std::vector<double> high = spectrum(laplacian(cs, j, with_dir(dirs, j)), opt);
  const double r = cs.complex().regularity(j);
  return compare_nonzero_spectra(low, high, tol * 2.0 * r, tol);
}

namespace {

std::vector<cplx> random_cochain(std::size_t n, bool complex_values, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& x : v) {
    const double re = nd(rng);
    x = complex_values ? cplx(re, nd(rng)) : cplx(re);
  }
  return v;
}

IdentityCheck make_check(std::string name, double value, double tol, std::string detail = {}) {
  IdentityCheck c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = tol;
  c.pass = value <= tol;
  c.detail = std::move(detail);
  return c;
}

IdentityCheck skipped_check(std::string name, std::string detail) {
  IdentityCheck c;
  c.name = std::move(name);
  c.pass = true;
  c.skipped = true;
  c.detail = std::move(detail);
  return c;
}

}  // namespace

std::vector<IdentityCheck> identity_suite(const CochainSpace& cs, const IdentitySuiteOptions& opt) {
  const CubicalComplex& x = cs.complex();
  const int g = x.dimension();
  const DirSet all = x.all_dirs();
  const bool trivial = cs.system().kind == LocalSystemKind::kTrivial;
  const bool complex_values = !cs.system().is_real();
  const double exact_tol = trivial ? 0.0 : 1e-12;
  std::vector<IdentityCheck> out;
  std::mt19937_64 rng(opt.seed);

  std::map<std::pair<int, DirSet>, SparseMatrix> bd, cbd;
  for (DirSet dirs = 0; dirs <= all; ++dirs)
    for (int j = 0; j < g; ++j)
      if (!has_dir(dirs, j)) {
        bd[{j, dirs}] = partial_boundary(cs, j, dirs);
        cbd[{j, dirs}] = partial_coboundary(cs, j, dirs);
      }

  // Commutation of partial boundaries and coboundaries.
  double comm = 0.0, comm_star = 0.0;
  std::size_t comm_pairs = 0;
  for (DirSet dirs = 0; dirs <= all; ++dirs)
    for (int j = 0; j < g; ++j)
      for (int k = j + 1; k < g; ++k) {
        if (has_dir(dirs, j) || has_dir(dirs, k)) continue;
        const DirSet dj = with_dir(dirs, j), dk = with_dir(dirs, k);
        comm = std::max(comm, max_abs_diff(bd[{k, dj}] * bd[{j, dirs}], bd[{j, dk}] * bd[{k, dirs}]));
        comm_star = std::max(comm_star,
                             max_abs_diff(cbd[{j, dirs}] * cbd[{k, dj}], cbd[{k, dirs}] * cbd[{j, dk}]));
        ++comm_pairs;
      }
  out.push_back(make_check("partial boundaries commute", comm, exact_tol,
                           std::to_string(comm_pairs) + " pairs"));
  out.push_back(make_check("partial coboundaries commute", comm_star, exact_tol));

  double dd = 0.0, dsds = 0.0;
  for (int i = 0; i + 1 < g; ++i) {
    dd = std::max(dd, (total_d(cs, i + 1) * total_d(cs, i)).max_abs());
    dsds = std::max(dsds, (total_dstar(cs, i) * total_dstar(cs, i + 1)).max_abs());
  }
  out.push_back(make_check("d^2 = 0", dd, exact_tol));
  out.push_back(make_check("(d*)^2 = 0", dsds, exact_tol));

  // Adjointness, as matrices and on random pairs.
  double adj = 0.0;
  for (const auto& [key, m] : bd) adj = std::max(adj, max_abs_diff(cbd[key], m.adjoint()));
  out.push_back(make_check("coboundary is the adjoint of the boundary", adj, 1e-12));
  double pair_res = 0.0;
  std::vector<std::pair<int, DirSet>> keys;
  for (const auto& kv : bd) keys.push_back(kv.first);
  for (int p = 0; p < opt.random_pairs && !keys.empty(); ++p) {
    const auto key = keys[static_cast<std::size_t>(p) % keys.size()];
    const SparseMatrix& b = bd[key];
    const SparseMatrix& cb = cbd[key];
    const auto s = random_cochain(b.cols(), complex_values, rng);
    const auto t = random_cochain(b.rows(), complex_values, rng);
    const auto bs = b.apply(s);
    const auto cbt = cb.apply(t);
    const double scale = norm2(bs) * norm2(t) + norm2(s) * norm2(cbt);
    if (scale > 0.0) pair_res = std::max(pair_res, std::abs(inner(bs, t) - inner(s, cbt)) / scale);
  }
  out.push_back(make_check("<ds, t> = <s, d*t> on random pairs", pair_res, 1e-12,
                           std::to_string(opt.random_pairs) + " pairs"));

  // Box = r - S, spectra and component counts per (j, I).
  double box_star = 0.0, star_out = 0.0, box_out = 0.0, transfer = 0.0;
  bool transfer_ok = true, components_ok = true;
  std::size_t transfer_done = 0, transfer_skipped = 0, box_high_skipped = 0;
  std::string comp_detail;
  for (DirSet dirs = 0; dirs <= all; ++dirs)
    for (int j = 0; j < g; ++j) {
      if (has_dir(dirs, j)) continue;
      const int r = x.regularity(j);
      const SparseMatrix star = star_matrix(cs, j, dirs);
      const SparseMatrix box = cbd[{j, dirs}] * bd[{j, dirs}];
      box_star = std::max(box_star,
                          max_abs_diff(box, SparseMatrix::identity(cs.dim(dirs), double(r)) - star));
      std::vector<double> sev;
      for (const auto& [key, ev] : opt.star_spectra)
        if (key == std::make_pair(j, dirs)) sev = ev;
      if (sev.empty() && cs.dim(dirs) > 0) {
        if (cs.dim(dirs) > opt.dense_cap) {
          transfer_ok = false;
          comp_detail += " S spectrum too large;";
          continue;
        }
        sev = spectrum(star);
      }
      for (double e : sev) {
        star_out = std::max(star_out, std::max(e - r, -r - e));
        box_out = std::max(box_out, std::max(-(r - e), (r - e) - 2.0 * r));
      }
      if (trivial) {
        const auto comp = connected_components(link_graph(x, j, dirs));
        const auto v = classify_ramanujan(sev, r);
        if (v.multiplicity_plus != comp.count) components_ok = false;
        comp_detail += " (j=" + std::to_string(j + 1) + ",I=" + std::to_string(dirs) + "): +r x" +
                       std::to_string(v.multiplicity_plus) + ", components " +
                       std::to_string(comp.count) + ";";
      }
      const DirSet upper = with_dir(dirs, j);
      if (cs.dim(upper) > opt.dense_cap) {
        ++transfer_skipped;
        ++box_high_skipped;
        continue;
      }
      const std::vector<double> high = spectrum(laplacian(cs, j, upper));
      for (double e : high) box_out = std::max(box_out, std::max(-e, e - 2.0 * r));
      std::vector<double> low;
      for (double e : sev) low.push_back(r - e);
      const TransferReport tr = compare_nonzero_spectra(low, high, 1e-8 * 2.0 * r, 1e-8);
      transfer_ok = transfer_ok && tr.pass;
      transfer = std::max(transfer, tr.max_difference);
      ++transfer_done;
    }
  out.push_back(make_check("box = r Id - S entrywise", box_star, exact_tol));
  out.push_back(make_check("S spectra within [-r, r]", std::max(0.0, star_out), 1e-10));
  {
    IdentityCheck c = make_check("box spectra within [0, 2r]", std::max(0.0, box_out), 1e-10);
    if (box_high_skipped > 0)
      c.detail = std::to_string(box_high_skipped) + " upper levels above dense cap " +
                 std::to_string(opt.dense_cap) + " not solved";
    out.push_back(c);
  }
  {
    IdentityCheck c = make_check("nonzero spectrum transfer across d_j", transfer, 1e-8);
    c.pass = c.pass && transfer_ok;
    c.detail = std::to_string(transfer_done) + " pairs compared";
    if (transfer_skipped > 0) {
      c.detail += ", " + std::to_string(transfer_skipped) + " above dense cap " +
                  std::to_string(opt.dense_cap);
      if (transfer_done == 0) c.skipped = true;
    }
    out.push_back(c);
  }
  if (trivial) {
    IdentityCheck c = make_check("+r multiplicity = link graph components", components_ok ? 0.0 : 1.0, 0.0);
    c.detail = comp_detail;
    out.push_back(c);
  } else {
    out.push_back(skipped_check("+r multiplicity = link graph components",
                                "not asserted for nontrivial coefficients"));
  }

  // Hodge decomposition on every level.
  for (int i = 0; i <= g; ++i) {
    const std::size_t n = cs.level_dim(i);
    if (n == 0) continue;
    auto c = random_cochain(n, complex_values, rng);
    const double cn = norm2(c);
    for (auto& v : c) v /= cn;
    const HodgeParts hp = hodge_project(cs, i, c, opt.hodge);
    double orth = std::max({std::abs(inner(hp.harmonic, hp.exact)),
                            std::abs(inner(hp.harmonic, hp.coexact)),
                            std::abs(inner(hp.exact, hp.coexact))});
    std::vector<cplx> sum(n);
    for (std::size_t k = 0; k < n; ++k) sum[k] = c[k] - hp.harmonic[k] - hp.exact[k] - hp.coexact[k];
    double closed = 0.0;
    if (i < g) closed = std::max(closed, norm2(total_d(cs, i).apply(hp.harmonic)));
    if (i > 0) closed = std::max(closed, norm2(total_dstar(cs, i - 1).apply(hp.harmonic)));
    const std::string method = hp.method == HodgeMethod::kEigen ? "eigen" : "iterative";
    const std::string lvl = "level " + std::to_string(i);
    out.push_back(make_check("hodge orthogonality " + lvl, orth, 1e-10, method + ", dim " + std::to_string(n)));
    out.push_back(make_check("hodge reconstruction " + lvl, norm2(sum), 1e-10, method));
    out.push_back(make_check("hodge harmonic part closed and coclosed " + lvl, closed, 1e-10, method));
  }
  return out;
}

}  // namespace ramcube

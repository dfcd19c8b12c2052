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
#include "ramcube/linalg.hpp"
#include "ramcube/locsys.hpp"
#include "ramcube/sparse.hpp"

namespace ramcube {

// Coordinates of cochains: one fiber vector per unoriented I-cube, in the
// canonical orientation. Levels order their direction sets by bitmask.
// Values on other orientations follow from complete alternation,
// s(inv_j c) = -L_{c,j} s(c), and are produced by transport().
class CochainSpace {
 public:
  CochainSpace(const CubicalComplex& x, const LocalSystem& l);

  const CubicalComplex& complex() const { return *x_; }
  const LocalSystem& system() const { return *l_; }
  std::size_t fiber() const { return l_->fiber_dim(); }

  std::size_t dim(DirSet dirs) const { return x_->cell_count(dirs) * fiber(); }
  std::vector<DirSet> level_sets(int i) const;
  std::size_t level_dim(int i) const;
  std::size_t level_offset(DirSet dirs) const;  // offset of C^I inside C^|I|

  // s(c) = transport(c) s(canonical representative of c).
  const CMatrix& transport(DirSet dirs, CubeId c) const {
    return transport_[dirs][c];
  }
  // L_{c,j}: transition of the direction-j edge at the origin of c.
  const CMatrix& edge_transition(DirSet dirs, CubeId c, int j) const;
  const CMatrix& edge_transition_inverse(DirSet dirs, CubeId c, int j) const;

  // Largest deviation seen while propagating transports around orbits
  // (nonzero only for non-flat systems or broken orientations).
  double transport_inconsistency() const { return inconsistency_; }

 private:
  const CubicalComplex* x_;
  const LocalSystem* l_;
  std::vector<std::vector<CMatrix>> transport_;
  double inconsistency_ = 0.0;
};

// d_{j,I}: C^I -> C^{I+j}, (ds)(t) = L_{t,j}^{-1} s(top_j t) - s(bot_j t).
SparseMatrix partial_boundary(const CochainSpace& cs, int j, DirSet dirs);

// d*_{j,I}: C^{I+j} -> C^I, (d*t)(s) = sum over top_j c = s of L_{c,j} t(c).
SparseMatrix partial_coboundary(const CochainSpace& cs, int j, DirSet dirs);

// Total d on level i (C^i -> C^{i+1}) with sign (-1)^(position of j in I+j).
SparseMatrix total_d(const CochainSpace& cs, int i);
// Total d* on level i (C^{i+1} -> C^i), assembled from the coboundaries.
SparseMatrix total_dstar(const CochainSpace& cs, int i);

// Partial Laplacian of direction j on C^I: d*d if j not in I, d d* if j in I.
SparseMatrix laplacian(const CochainSpace& cs, int j, DirSet dirs);
SparseMatrix total_laplacian(const CochainSpace& cs, int i);

// Star operator on C^I through the link graph Gr_{j,I} (requires parities):
// (S s)(v) = sum over edges e ending at v of L_e s(origin e).
SparseMatrix star_matrix(const CochainSpace& cs, int j, DirSet dirs);

struct SpectrumOptions {
  std::size_t max_dim = 20000;
  double hermitian_tol = 1e-10;
};

// Eigenvalues in descending order of a Hermitian matrix (dense solver; real
// matrices are solved directly, complex ones through their real form).
std::vector<double> spectrum(const SparseMatrix& m, const SpectrumOptions& opt = {});

// Eigenpairs (ascending) of a Hermitian matrix in real coordinates; for
// complex input the real form is used and `realified` is set.
struct EigenPairs {
  std::vector<double> values;
  linalg::Matrix vectors;
  bool realified = false;
};
EigenPairs eigen_decompose(const SparseMatrix& m, const SpectrumOptions& opt = {});

double hermitian_deviation(const SparseMatrix& m);

struct RamanujanVerdict {
  int regularity = 0;
  std::size_t multiplicity_plus = 0;   // eigenvalues within tol * r of +r
  std::size_t multiplicity_minus = 0;  // eigenvalues within tol * r of -r
  std::size_t nontrivial = 0;
  double mu = 0.0;                     // max |nontrivial eigenvalue|
  double bound = 0.0;                  // 2 sqrt(r - 1)
  double gap = 0.0;                    // r - mu
  bool ramanujan = false;
};

RamanujanVerdict classify_ramanujan(const std::vector<double>& eigs, int r,
                                    double tol = 1e-8);

enum class HodgeMethod { kAuto, kEigen, kIterative };

struct HodgeParts {
  std::vector<cplx> harmonic;
  std::vector<cplx> exact;    // in the image of d from level i-1
  std::vector<cplx> coexact;  // in the image of d* from level i+1
  HodgeMethod method = HodgeMethod::kEigen;
};

struct HodgeOptions {
  HodgeMethod method = HodgeMethod::kAuto;
  std::size_t dense_cap = 3000;  // kAuto uses the eigen route up to this real dimension
  double kernel_tol = 1e-8;
  double cg_tol = 1e-14;
};

HodgeParts hodge_project(const CochainSpace& cs, int i, const std::vector<cplx>& c,
                         const HodgeOptions& opt = {});

// h^i = dim C^i - rank d_i - rank d_{i-1}, ranks by pivoted QR at rel_tol.
std::vector<std::size_t> cohomology_dims(const CochainSpace& cs, double rel_tol = 1e-8,
                                         std::size_t max_dim = 20000);

// dim ker of the total Laplacian per level (eigenvalues <= tol * max(1, |L|)).
std::vector<std::size_t> harmonic_dims(const CochainSpace& cs, double tol = 1e-8,
                                       std::size_t max_dim = 20000);

// sum over I of (-1)^|I| (unoriented I-cubes) * fiber dimension.
std::int64_t euler_characteristic(const CubicalComplex& x, std::size_t fiber = 1);

struct TransferReport {
  std::size_t nonzero_low = 0;   // on C^I
  std::size_t nonzero_high = 0;  // on C^{I+j}
  double max_difference = 0.0;
  bool pass = false;
};

// Nonzero eigenvalues of the direction-j Laplacian on C^I and on C^{I+j}
// agree with multiplicity (matched within tol).
TransferReport eigenspace_transfer_check(const CochainSpace& cs, int j, DirSet dirs,
                                         double tol = 1e-8,
                                         const SpectrumOptions& opt = {});

// Same comparison given both spectra (any order).
TransferReport compare_nonzero_spectra(std::vector<double> low, std::vector<double> high,
                                       double zero_tol, double tol);

// One named check of the operator identity suite.
struct IdentityCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string detail;
};

struct IdentitySuiteOptions {
  std::size_t dense_cap = 7000;  // largest level solved densely for spectra
  HodgeOptions hodge;
  std::uint64_t seed = 7;
  int random_pairs = 100;
  // Spectra of S_{j,I} already computed by the caller, keyed by (j, I).
  std::vector<std::pair<std::pair<int, DirSet>, std::vector<double>>> star_spectra;
};

std::vector<IdentityCheck> identity_suite(const CochainSpace& cs,
                                          const IdentitySuiteOptions& opt = {});

}  // namespace ramcube

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

// Acceptance run: one PASS/FAIL line per criterion, details indented above
// it. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ramcube/arith.hpp"
#include "ramcube/complex.hpp"
#include "ramcube/harmonic.hpp"
#include "ramcube/locsys.hpp"

using namespace ramcube;

namespace {

constexpr double kRamanujanSlack = 1e-8;
constexpr double kFlatTol = 1e-12;
constexpr double kUnitaryTol = 1e-12;
constexpr double kSpectrumMatch = 1e-8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  void require(bool ok, const std::string& what) {
    std::printf("    %-4s %s\n", ok ? "ok" : "FAIL", what.c_str());
    pass = pass && ok;
  }
};

std::vector<Outcome> g_results(8);

void verdict(int n, const std::string& title) {
  std::printf("criterion %d %s: %s\n", n, g_results[static_cast<std::size_t>(n)].pass ? "PASS" : "FAIL",
              title.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Runs the identity suite and records the result under criterion 6.
void identities(const std::string& label, const CochainSpace& cs,
                std::vector<std::pair<std::pair<int, DirSet>, std::vector<double>>> cached) {
  const auto t0 = Clock::now();
  IdentitySuiteOptions opt;
  opt.star_spectra = std::move(cached);
  const auto checks = identity_suite(cs, opt);
  std::size_t passed = 0, skipped = 0, failed = 0;
  for (const IdentityCheck& c : checks) {
    if (c.skipped) {
      ++skipped;
      std::printf("      skipped: %s (%s)\n", c.name.c_str(), c.detail.c_str());
    } else if (c.pass) {
      ++passed;
    } else {
      ++failed;
      std::printf("      failed: %s value %.3e tol %.1e %s\n", c.name.c_str(), c.value, c.tolerance,
                  c.detail.c_str());
    }
  }
  char line[256];
  std::snprintf(line, sizeof line, "identity suite on %s: %zu passed, %zu skipped, %zu failed (%.1f s)",
                label.c_str(), passed, skipped, failed, seconds_since(t0));
  g_results[6].require(failed == 0, line);
}

using SpectrumCache = std::vector<std::pair<std::pair<int, DirSet>, std::vector<double>>>;

// Star spectra and verdicts over all (j, I) with j not in I.
SpectrumCache star_spectra(const CochainSpace& cs, std::vector<RamanujanVerdict>* verdicts) {
  SpectrumCache out;
  const CubicalComplex& x = cs.complex();
  for (DirSet dirs = 0; dirs <= x.all_dirs(); ++dirs)
    for (int j = 0; j < x.dimension(); ++j) {
      if (has_dir(dirs, j)) continue;
      auto ev = spectrum(star_matrix(cs, j, dirs));
      if (verdicts != nullptr) verdicts->push_back(classify_ramanujan(ev, x.regularity(j), kRamanujanSlack));
      out.push_back({{j, dirs}, std::move(ev)});
    }
  return out;
}

double max_spectrum_difference(const SpectrumCache& a, const SpectrumCache& b) {
  double diff = 0.0;
  if (a.size() != b.size()) return INFINITY;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].second.size() != b[s].second.size()) return INFINITY;
    for (std::size_t i = 0; i < a[s].second.size(); ++i)
      diff = std::max(diff, std::abs(a[s].second[i] - b[s].second[i]));
  }
  return diff;
}

}  // namespace

int main() {
  const auto start = Clock::now();
  const double lps_bound = 2.0 * std::sqrt(5.0);

  // Criterion 1: the LPS graph for p = 5, N1 = 13.
  const ArithComplex lps = build_complex({{5}, 13, std::nullopt});
  const LocalSystem lps_trivial = trivial_system(lps.complex);
  const CochainSpace lps_cs(lps.complex, lps_trivial);
  SpectrumCache lps_spectra;
  {
    Outcome& o = g_results[1];
    const auto t0 = Clock::now();
    o.require(lps.vertices.size() == 2184, "2184 vertices (" + std::to_string(lps.vertices.size()) + ")");
    o.require(lps.complex.regularity(0) == 6, "6-regular");
    o.require(connected_components(link_graph(lps.complex, 0, 0)).count == 1, "connected");
    std::vector<RamanujanVerdict> v;
    lps_spectra = star_spectra(lps_cs, &v);
    o.require(v[0].multiplicity_plus == 1, "+6 simple");
    o.require(v[0].multiplicity_minus == 1, "-6 present (bipartite)");
    o.require(v[0].mu <= lps_bound + kRamanujanSlack,
              "mu = " + fmt("%.12f", v[0].mu) + " <= 2 sqrt 5 = " + fmt("%.12f", lps_bound));
    std::printf("    dense solve of 2184 x 2184: %.1f s\n", seconds_since(t0));
    verdict(1, "LPS graph p = 5, N1 = 13");
  }

  // Criterion 2: the (6, 14)-regular square complex with the smallest N1.
  const std::int64_t sq_n1 = find_smallest_n1({5, 13});
  const ArithComplex sq = build_complex({{5, 13}, sq_n1, std::nullopt});
  const LocalSystem sq_trivial = trivial_system(sq.complex);
  const CochainSpace sq_cs(sq.complex, sq_trivial);
  SpectrumCache sq_spectra;
  {
    Outcome& o = g_results[2];
    const auto t0 = Clock::now();
    o.require(true, "smallest valid N1 = " + std::to_string(sq_n1) + ", " +
                        std::to_string(sq.vertices.size()) + " vertices");
    o.require(sq.complex.regularity() == std::vector<int>{6, 14}, "regularity (6, 14)");
    const AxiomReport ar = verify_axioms(sq.complex);
    for (const AxiomCheck& c : ar.checks) o.require(c.pass, "axiom check: " + c.name);
    o.require(verify_parities(sq.complex).pass, "parities");
    std::vector<RamanujanVerdict> v;
    sq_spectra = star_spectra(sq_cs, &v);
    o.require(v.size() == 4, "4 pairs (j, I)");
    std::size_t slot = 0;
    for (const auto& [key, ev] : sq_spectra) {
      const RamanujanVerdict& r = v[slot++];
      char line[160];
      std::snprintf(line, sizeof line, "j=%d I=%u: dim %zu, mu = %.12f, bound %.12f", key.first + 1,
                    key.second, ev.size(), r.mu, r.bound);
      o.require(r.ramanujan, line);
    }
    std::printf("    %.1f s\n", seconds_since(t0));
    verdict(2, "square complex primes {5, 13} is Ramanujan");
  }

  // Criterion 3: weight-2 coefficients on the LPS graph.
  {
    Outcome& o = g_results[3];
    const auto t0 = Clock::now();
    const LocalSystem l = build_symm_system(lps, {2, true});
    const FlatnessReport f = verify_flatness(lps.complex, l);
    o.require(f.max_residual < kFlatTol, "flatness residual " + fmt("%.2e", f.max_residual));
    o.require(f.unitarity_residual < kUnitaryTol, "unitarity residual " + fmt("%.2e", f.unitarity_residual));
    const CochainSpace cs(lps.complex, l);
    std::vector<RamanujanVerdict> v;
    const SpectrumCache spectra = star_spectra(cs, &v);
    o.require(v[0].ramanujan, "mu = " + fmt("%.12f", v[0].mu) + " <= " + fmt("%.12f", v[0].bound) +
                                  " (dim " + std::to_string(spectra[0].second.size()) + ")");

    const std::vector<std::uint32_t> other = perturbed_section(lps.groups, 20261016);
    std::size_t moved = 0;
    for (std::size_t h = 0; h < other.size(); ++h) moved += other[h] != lps.groups.section[h] ? 1 : 0;
    const LocalSystem l2 = build_symm_system(lps, {2, true}, &other);
    const CochainSpace cs2(lps.complex, l2);
    const SpectrumCache spectra2 = star_spectra(cs2, nullptr);
    const double diff = max_spectrum_difference(spectra, spectra2);
    o.require(diff <= kSpectrumMatch, "perturbed section (" + std::to_string(moved) +
                                          " classes moved): spectra differ by " + fmt("%.2e", diff));
    if (lps.groups.kernel_order() == 1)
      std::printf("    H' = H for N1 = 13: the section is unique and the signs are trivial\n");

    // Where the section matters: odd weight on p = 5, N1 = 11.
    const ArithComplex odd = build_complex({{5}, 11, std::nullopt});
    const LocalSystem lo = build_symm_system(odd, {1, false});
    const FlatnessReport fo = verify_flatness(odd.complex, lo);
    o.require(fo.unitarity_residual < kUnitaryTol && fo.inverse_residual < kUnitaryTol,
              "N1 = 11, weight 1: unitary, inverse residual " + fmt("%.2e", fo.inverse_residual));
    const CochainSpace cso(odd.complex, lo);
    std::vector<RamanujanVerdict> vo;
    const SpectrumCache odd_spectra = star_spectra(cso, &vo);
    o.require(vo[0].ramanujan, "N1 = 11, weight 1: mu = " + fmt("%.12f", vo[0].mu));
    const std::vector<std::uint32_t> odd_other = perturbed_section(odd.groups, 20261016);
    std::size_t odd_moved = 0, flipped_signs = 0;
    for (std::size_t h = 0; h < odd_other.size(); ++h)
      odd_moved += odd_other[h] != odd.groups.section[h] ? 1 : 0;
    for (std::uint32_t vtx = 0; vtx < odd.vertices.size(); ++vtx)
      for (int i = 0; i < 6; ++i)
        flipped_signs += edge_sign(odd, odd.groups.section, 0, i, vtx) != edge_sign(odd, odd_other, 0, i, vtx);
    const LocalSystem lo2 = build_symm_system(odd, {1, false}, &odd_other);
    const CochainSpace cso2(odd.complex, lo2);
    const double odd_diff = max_spectrum_difference(odd_spectra, star_spectra(cso2, nullptr));
    o.require(odd_moved > 0 && flipped_signs > 0 && odd_diff <= kSpectrumMatch,
              "N1 = 11, weight 1, perturbed section (" + std::to_string(odd_moved) + " classes moved, " +
                  std::to_string(flipped_signs) + " edge signs flipped): spectra differ by " +
                  fmt("%.2e", odd_diff));
    std::printf("    %.1f s\n", seconds_since(t0));
    verdict(3, "weight-2 local system on the LPS graph");
    identities("LPS, weight 2", cs, spectra);
    identities("LPS, weight 2, perturbed section", cs2, spectra2);
    identities("N1 = 11, weight 1", cso, odd_spectra);
  }

  // Criterion 4: cohomology of the square complex.
  {
    Outcome& o = g_results[4];
    const auto t0 = Clock::now();
    std::int64_t chi = 0;
    for (DirSet d = 0; d <= sq.complex.all_dirs(); ++d) {
      const auto cells = static_cast<std::int64_t>(sq.complex.cell_count(d));
      chi += dir_count(d) % 2 == 0 ? cells : -cells;
    }
    const auto h = cohomology_dims(sq_cs);
    char line[160];
    std::snprintf(line, sizeof line, "h = (%zu, %zu, %zu), Euler characteristic %lld", h[0], h[1], h[2],
                  static_cast<long long>(chi));
    o.require(h.size() == 3 && h[0] == 1 && h[1] == 0 && static_cast<std::int64_t>(h[2]) == chi - 1, line);
    std::printf("    %.1f s\n", seconds_since(t0));
    verdict(4, "cohomology vanishes outside degrees 0 and 2");
  }

  // Criterion 5: girth of the LPS graph.
  {
    Outcome& o = g_results[5];
    const GirthResult gr = girth(lps, 12);
    o.require(gr.bound == 5, "bound ceil(2 log_5(169 / 4)) = " + std::to_string(gr.bound));
    o.require(gr.girth.has_value(), "cycle found within depth 12 (depth reached " +
                                        std::to_string(gr.depth_reached) + ")");
    o.require(gr.girth && *gr.girth >= gr.bound, "girth " + (gr.girth ? std::to_string(*gr.girth) : "?"));
    verdict(5, "girth bound on the LPS graph");
  }

  // Criterion 7 (mu table), built before the identity suite runs on it.
  struct Row {
    std::int64_t n1;
    std::size_t vertices;
    RamanujanVerdict v;
  };
  std::vector<Row> rows;
  {
    Outcome& o = g_results[7];
    std::int64_t n1 = 1;
    for (int i = 0; i < 3; ++i) {
      n1 = find_smallest_n1({5}, 200, n1 + 2);
      const ArithComplex x = build_complex({{5}, n1, std::nullopt});
      const LocalSystem l = trivial_system(x.complex);
      const CochainSpace cs(x.complex, l);
      std::vector<RamanujanVerdict> v;
      const SpectrumCache spectra = star_spectra(cs, &v);
      rows.push_back({n1, x.vertices.size(), v[0]});
      o.require(v[0].mu <= v[0].bound + kRamanujanSlack,
                "N1 = " + std::to_string(n1) + ": mu <= 2 sqrt 5 + 1e-8");
      identities("LPS N1 = " + std::to_string(n1), cs, spectra);
    }
    rows.push_back({13, lps.vertices.size(), classify_ramanujan(lps_spectra[0].second, 6, kRamanujanSlack)});
    std::printf("    %6s %9s %16s %16s %14s\n", "N1", "vertices", "mu", "2 sqrt(r-1)", "r - mu");
    for (const Row& r : rows)
      std::printf("    %6lld %9zu %16.12f %16.12f %14.10f\n", static_cast<long long>(r.n1), r.vertices,
                  r.v.mu, r.v.bound, r.v.gap);
  }

  identities("LPS, trivial", lps_cs, lps_spectra);
  identities("square complex, trivial", sq_cs, sq_spectra);
  verdict(6, "operator identity suite on every built instance");
  verdict(7, "mu table for primes {5}, first three valid N1");

  bool all = true;
  for (int n = 1; n <= 7; ++n) all = all && g_results[static_cast<std::size_t>(n)].pass;
  std::printf("acceptance: %s (%.1f s)\n", all ? "all criteria pass" : "some criteria fail", seconds_since(start));
  return all ? 0 : 1;
}

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

#include "ramcube/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ramcube/errors.hpp"
#include "ramcube/locsys.hpp"
#include "ramcube/quat.hpp"

namespace ramcube {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kFlatTol = 1e-12;
constexpr double kUnitaryTol = 1e-12;
constexpr double kRankTol = 1e-8;
constexpr std::size_t kReportCohomologyCap = 7000;

const std::set<std::string> kConfigKeys = {"primes", "N1", "k", "out", "tol", "max_dim", "max_depth"};

std::int64_t as_int(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  std::vector<std::set<std::string>> seen;
  std::string duplicate;
  const nlohmann::json::parser_callback_t cb = [&](int depth, nlohmann::json::parse_event_t ev,
                                                   nlohmann::json& parsed) {
    using E = nlohmann::json::parse_event_t;
    if (ev == E::object_start) seen.emplace_back();
    if (ev == E::object_end) seen.pop_back();
    if (ev == E::key && !seen.empty() && !seen.back().insert(parsed.get<std::string>()).second &&
        duplicate.empty())
      duplicate = parsed.get<std::string>();
    (void)depth;
    return true;
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text, cb);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!duplicate.empty()) throw ConfigError("duplicate key '" + duplicate + "'");
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (kConfigKeys.count(key) == 0) throw ConfigError("unknown key '" + key + "'");

  RunConfig cfg;
  if (!j.contains("primes")) throw ConfigError("missing required key 'primes'");
  if (!j["primes"].is_array() || j["primes"].empty())
    throw ConfigError("'primes' must be a nonempty array");
  for (const auto& p : j["primes"]) {
    const std::int64_t v = as_int(p, "primes");
    if (v <= 2 || !is_prime(v)) throw ConfigError("'primes' entries must be odd primes, got " + std::to_string(v));
    if (std::find(cfg.primes.begin(), cfg.primes.end(), v) != cfg.primes.end())
      throw ConfigError("'primes' contains " + std::to_string(v) + " twice");
    cfg.primes.push_back(v);
  }
  if (cfg.primes.size() > 8) throw ConfigError("at most 8 primes are supported");
  if (j.contains("N1")) {
    const auto& v = j["N1"];
    if (v.is_string()) {
      if (v.get<std::string>() != "auto") throw ConfigError("'N1' must be an odd prime or \"auto\"");
    } else {
      const std::int64_t n1 = as_int(v, "N1");
      if (n1 <= 2 || !is_prime(n1)) throw ConfigError("'N1' must be an odd prime");
      for (std::int64_t p : cfg.primes)
        if (p == n1) throw ConfigError("'N1' must be coprime to the primes");
      cfg.n1 = n1;
    }
  }
  if (j.contains("k")) {
    const std::int64_t k = as_int(j["k"], "k");
    if (k < 0 || k > 64) throw ConfigError("'k' must lie in [0, 64]");
    cfg.k = static_cast<int>(k);
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ConfigError("'out' must be a string");
    cfg.out = j["out"].get<std::string>();
  }
  if (j.contains("tol")) {
    if (!j["tol"].is_number()) throw ConfigError("'tol' must be a number");
    cfg.tol = j["tol"].get<double>();
    if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) throw ConfigError("'tol' must lie in (0, 1)");
  }
  if (j.contains("max_dim")) {
    const std::int64_t v = as_int(j["max_dim"], "max_dim");
    if (v < 1) throw ConfigError("'max_dim' must be positive");
    cfg.max_dim = static_cast<std::size_t>(v);
  }
  if (j.contains("max_depth")) {
    const std::int64_t v = as_int(j["max_depth"], "max_depth");
    if (v < 1 || v > 64) throw ConfigError("'max_depth' must lie in [1, 64]");
    cfg.max_depth = static_cast<std::size_t>(v);
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string canonical_config(const RunConfig& cfg) {
  nlohmann::json j;  // std::map keys: sorted
  j["primes"] = cfg.primes;
  if (cfg.n1)
    j["N1"] = *cfg.n1;
  else
    j["N1"] = "auto";
  j["k"] = cfg.k;
  j["tol"] = cfg.tol;
  j["max_dim"] = cfg.max_dim;
  j["max_depth"] = cfg.max_depth;
  return j.dump();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_config(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

const std::vector<std::pair<Command, const char*>> kCommandNames = {
    {Command::kBuild, "build"},           {Command::kVerify, "verify"},
    {Command::kSpectrum, "spectrum"},     {Command::kRamanujan, "ramanujan"},
    {Command::kGirth, "girth"},           {Command::kCohomology, "cohomology"},
    {Command::kExportDot, "export-dot"},  {Command::kReport, "report"},
};

}  // namespace

std::optional<Command> command_from_name(const std::string& name) {
  for (const auto& [c, n] : kCommandNames)
    if (name == n) return c;
  return std::nullopt;
}

const char* command_name(Command c) {
  for (const auto& [cc, n] : kCommandNames)
    if (cc == c) return n;
  return "?";
}

namespace {

std::string class_of(double e, int r, double tol) {
  if (std::abs(e - r) <= tol * r) return "trivial+";
  if (std::abs(e + r) <= tol * r) return "trivial-";
  return "nontrivial";
}

ordered_json dirs_json(DirSet dirs) {
  ordered_json a = ordered_json::array();
  for (int j : dirs_of(dirs)) a.push_back(j + 1);
  return a;
}

ordered_json witness_json(const std::optional<AxiomWitness>& w) {
  if (!w) return nullptr;
  ordered_json o;
  o["I"] = w->dirs;
  o["direction"] = w->direction >= 0 ? ordered_json(w->direction + 1) : ordered_json(nullptr);
  o["cube"] = w->cube == kNoCube ? ordered_json(nullptr) : ordered_json(w->cube);
  o["detail"] = w->detail;
  return o;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + p.string() + "'");
}

struct Plan {
  bool locsys = false, irreducibility = false, identities = false, spectrum = false,
       ramanujan = false, girth = false, cohomology = false, dot = false;
  bool best_effort = false;  // report: skip stages above the dense caps
};

Plan plan_for(Command c) {
  Plan p;
  switch (c) {
    case Command::kBuild: p.locsys = true; break;
    case Command::kVerify: p.locsys = p.irreducibility = p.identities = true; break;
    case Command::kSpectrum: p.locsys = p.spectrum = true; break;
    case Command::kRamanujan: p.locsys = p.spectrum = p.ramanujan = true; break;
    case Command::kGirth: p.girth = true; break;
    case Command::kCohomology: p.locsys = p.cohomology = true; break;
    case Command::kExportDot: p.dot = true; break;
    case Command::kReport:
      p.locsys = p.irreducibility = p.identities = p.spectrum = p.ramanujan = p.girth =
          p.cohomology = p.dot = true;
      p.best_effort = true;
      break;
  }
  return p;
}

}  // namespace

std::string spectrum_csv(const std::vector<SpectrumSummary>& spectra, double tol) {
  std::string out = "j,I,index,eigenvalue,class\n";
  char buf[64];
  for (const auto& s : spectra)
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", s.eigenvalues[i]);
      out += std::to_string(s.direction + 1) + "," + std::to_string(s.dirs) + "," +
             std::to_string(i) + "," + buf + "," +
             class_of(s.eigenvalues[i], s.verdict.regularity, tol) + "\n";
    }
  return out;
}

RunReport run(const RunConfig& cfg, Command cmd, const std::string& out_dir) {
  RunReport rep;
  const Plan plan = plan_for(cmd);
  const std::filesystem::path dir(out_dir.empty() ? "." : out_dir);

  std::error_code mkdir_error;
  std::filesystem::create_directories(dir, mkdir_error);  // surfaces as a write failure
  ordered_json doc;
  doc["tool"] = "ramcube";
  doc["version"] = kVersion;
  doc["command"] = command_name(cmd);
  doc["config"] = ordered_json::parse(canonical_config(cfg));
  doc["config_hash"] = config_hash(cfg);
  doc["tolerances"] = {{"classification", cfg.tol}, {"ramanujan", cfg.tol},
                       {"flatness", kFlatTol},      {"unitarity", kUnitaryTol},
                       {"rank", kRankTol},          {"hermitian", 1e-10},
                       {"identities_exact", 1e-12}, {"spectral_inclusion", 1e-10},
                       {"hodge", 1e-10},            {"transfer", 1e-8}};
  doc["status"] = "ok";
  doc["stage"] = "";
  doc["exit_code"] = 0;

  std::vector<std::string> negatives;
  std::string stage = "build";
  const auto stages = [&]() {
    const bool auto_n1 = !cfg.n1.has_value();
    if (auto_n1) {
      // Odd weights also need the central condition at the chosen modulus.
      rep.n1 = find_smallest_n1(cfg.primes);
      while (!central_condition_check(cfg.primes, rep.n1, cfg.k))
        rep.n1 = find_smallest_n1(cfg.primes, 200, rep.n1 + 2);
    } else {
      rep.n1 = *cfg.n1;
    }
    const ArithComplex ax = build_complex({cfg.primes, rep.n1, std::nullopt});
    const CubicalComplex& x = ax.complex;
    rep.vertices = x.count(0);
    {
      ordered_json c;
      c["N1"] = rep.n1;
      c["N1_source"] = auto_n1 ? "auto" : "config";
      c["dimension"] = x.dimension();
      ordered_json regs = ordered_json::array();
      for (int j = 0; j < x.dimension(); ++j) regs.push_back(x.regularity(j));
      c["regularity"] = regs;
      c["group"] = {{"kind", to_string(ax.groups.kind)},
                    {"order", ax.groups.h.size()},
                    {"cover_order", ax.groups.cover.size()},
                    {"kernel_order", ax.groups.kernel_order()}};
      c["vertices"] = x.count(0);
      ordered_json cells = ordered_json::array();
      for (DirSet d = 0; d <= x.all_dirs(); ++d)
        cells.push_back({{"I", d}, {"directions", dirs_json(d)}, {"oriented", x.count(d)},
                         {"unoriented", x.cell_count(d)}});
      c["cells"] = cells;
      const AxiomReport ar = verify_axioms(x);
      ordered_json checks = ordered_json::array();
      for (const auto& chk : ar.checks)
        checks.push_back({{"name", chk.name}, {"pass", chk.pass}, {"violations", chk.violations},
                          {"witness", witness_json(chk.witness)}});
      c["axioms"] = {{"pass", ar.pass()}, {"checks", checks}};
      const ParityReport pr = verify_parities(x);
      c["parities"] = {{"pass", pr.pass}, {"witness", witness_json(pr.witness)}};
      doc["complex"] = c;
    }

    if (plan.dot) {
      stage = "export-dot";
      write_file(dir / "complex.dot", skeleton_dot(x));
      rep.written.push_back("complex.dot");
    }

    if (plan.girth) {
      stage = "girth";
      const GirthResult gr = girth(ax, cfg.max_depth);
      rep.girth = gr;
      doc["girth"] = {{"girth", gr.girth ? ordered_json(*gr.girth) : ordered_json(nullptr)},
                      {"depth_reached", gr.depth_reached},
                      {"max_depth", cfg.max_depth},
                      {"lower_bound", gr.lower_bound},
                      {"bound", gr.bound},
                      {"bound_met", gr.bound_met}};
      if (!gr.bound_met)
        negatives.push_back(gr.girth ? "girth below the bound"
                                     : "girth bound not reached within max_depth");
    }

    if (plan.irreducibility) {
      stage = "irreducibility";
      ordered_json arr = ordered_json::array();
      for (const auto& e : irreducibility_report(x))
        arr.push_back({{"j", e.direction + 1},
                       {"I", e.dirs},
                       {"vertices", e.vertices},
                       {"components", e.components},
                       {"parity_classes", e.parity_classes},
                       {"connected_within_parity_classes", e.connected_within_parity_classes}});
      doc["irreducibility"] = arr;
    }

    if (!plan.locsys) return;
    stage = "locsys";
    LocalSystem l = cfg.k == 0 ? trivial_system(x)
                               : build_symm_system(ax, {cfg.k, cfg.k % 2 == 0});
    {
      const FlatnessReport fr = verify_flatness(x, l);
      const bool flat = fr.flat(kFlatTol);
      const bool unitary = fr.unitarity_residual <= kUnitaryTol;
      doc["local_system"] = {{"k", cfg.k},
                             {"fiber_dim", l.fiber_dim()},
                             {"description", l.description},
                             {"real", l.is_real()},
                             {"flatness_residual", fr.max_residual},
                             {"unitarity_residual", fr.unitarity_residual},
                             {"inverse_residual", fr.inverse_residual},
                             {"flat", flat},
                             {"unitary", unitary}};
      if (!flat) negatives.push_back("local system not flat");
      if (!unitary) negatives.push_back("local system not unitary");
    }
    const CochainSpace cs(x, l);

    if (plan.spectrum) {
      stage = "spectrum";
      ordered_json arr = ordered_json::array();
      for (DirSet d = 0; d <= x.all_dirs(); ++d)
        for (int j = 0; j < x.dimension(); ++j) {
          if (has_dir(d, j)) continue;
          SpectrumSummary s;
          s.direction = j;
          s.dirs = d;
          s.dim = cs.dim(d);
          s.eigenvalues = spectrum(star_matrix(cs, j, d), {cfg.max_dim, 1e-10});
          s.verdict = classify_ramanujan(s.eigenvalues, x.regularity(j), cfg.tol);
          s.components = connected_components(link_graph(x, j, d)).count;
          const auto& v = s.verdict;
          arr.push_back({{"j", j + 1},
                         {"I", d},
                         {"directions", dirs_json(d)},
                         {"dim", s.dim},
                         {"regularity", v.regularity},
                         {"multiplicity_plus", v.multiplicity_plus},
                         {"multiplicity_minus", v.multiplicity_minus},
                         {"nontrivial", v.nontrivial},
                         {"mu", v.mu},
                         {"bound", v.bound},
                         {"gap", v.gap},
                         {"ramanujan", v.ramanujan},
                         {"link_components", s.components}});
          rep.spectra.push_back(std::move(s));
        }
      doc["spectra"] = arr;
      write_file(dir / "spectrum.csv", spectrum_csv(rep.spectra, cfg.tol));
      rep.written.push_back("spectrum.csv");
    }

    if (plan.ramanujan) {
      stage = "ramanujan";
      bool all = true;
      for (const auto& s : rep.spectra) all = all && s.verdict.ramanujan;
      rep.ramanujan = all;
      doc["ramanujan"] = all;
      if (!all) negatives.push_back("not Ramanujan");
    }

    if (plan.identities) {
      stage = "identities";
      IdentitySuiteOptions opt;
      for (const auto& s : rep.spectra) opt.star_spectra.push_back({{s.direction, s.dirs}, s.eigenvalues});
      rep.identities = identity_suite(cs, opt);
      ordered_json arr = ordered_json::array();
      bool all = true;
      for (const auto& c : rep.identities) {
        arr.push_back({{"name", c.name},
                       {"value", c.value},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass},
                       {"skipped", c.skipped},
                       {"detail", c.detail}});
        all = all && c.pass;
      }
      doc["identities"] = {{"pass", all}, {"transport_inconsistency", cs.transport_inconsistency()},
                           {"checks", arr}};
      if (!all) negatives.push_back("operator identity failed");
    }

    if (plan.cohomology) {
      stage = "cohomology";
      std::size_t largest = 0;
      for (int i = 0; i <= x.dimension(); ++i) largest = std::max(largest, cs.level_dim(i));
      rep.euler_characteristic = euler_characteristic(x, l.fiber_dim());
      if (plan.best_effort && largest > std::min(cfg.max_dim, kReportCohomologyCap)) {
        doc["cohomology"] = {{"skipped", true},
                             {"reason", "cochain level of dimension " + std::to_string(largest) +
                                            " exceeds the dense rank cap"},
                             {"euler_characteristic", *rep.euler_characteristic}};
      } else {
        rep.cohomology = cohomology_dims(cs, kRankTol, cfg.max_dim);
        std::int64_t alt = 0;
        bool middle_vanishes = true;
        for (std::size_t i = 0; i < rep.cohomology.size(); ++i) {
          const auto h = static_cast<std::int64_t>(rep.cohomology[i]);
          alt += i % 2 == 0 ? h : -h;
          if (i > 0 && i + 1 < rep.cohomology.size() && h != 0) middle_vanishes = false;
        }
        doc["cohomology"] = {{"skipped", false},
                             {"dims", rep.cohomology},
                             {"euler_characteristic", *rep.euler_characteristic},
                             {"alternating_sum", alt},
                             {"vanishes_outside_0_and_g", middle_vanishes}};
      }
    }
  };
  try {
    stages();
    stage = "done";
  } catch (const ConfigError& e) {
    rep.exit_code = kExitConfig;
    rep.error = e.what();
  } catch (const ConstructionError& e) {
    rep.exit_code = kExitConstruction;
    rep.error = e.what();
  } catch (const std::exception& e) {
    rep.exit_code = kExitInternal;
    rep.error = e.what();
  }
  if (rep.exit_code == kExitOk && !negatives.empty()) {
    rep.exit_code = kExitVerification;
    for (const auto& n : negatives) rep.error += (rep.error.empty() ? "" : "; ") + n;
  }
  rep.stage = stage;
  doc["stage"] = stage;
  doc["exit_code"] = rep.exit_code;
  doc["status"] = rep.exit_code == kExitOk ? "ok" : "error";
  if (!rep.error.empty()) doc["error"] = rep.error;
  rep.json = doc.dump(2) + "\n";
  try {
    write_file(dir / "report.json", rep.json);
    rep.written.push_back("report.json");
  } catch (const std::exception& e) {
    if (rep.exit_code == kExitOk) rep.exit_code = kExitInternal;
    rep.error += (rep.error.empty() ? "" : "; ") + std::string(e.what());
  }
  return rep;
}

}  // namespace ramcube

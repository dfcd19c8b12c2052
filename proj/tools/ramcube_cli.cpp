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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ramcube/errors.hpp"
#include "ramcube/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<double> tol;
  std::optional<std::size_t> max_dim;
  std::optional<std::size_t> max_depth;
};

void print_summary(const ramcube::RunReport& rep) {
  std::printf("N1 = %lld, %zu vertices\n", static_cast<long long>(rep.n1), rep.vertices);
  for (const auto& s : rep.spectra)
    std::printf("  j=%d I=%u dim=%zu +r:%zu -r:%zu mu=%.12g bound=%.12g %s\n", s.direction + 1,
                s.dirs, s.dim, s.verdict.multiplicity_plus, s.verdict.multiplicity_minus,
                s.verdict.mu, s.verdict.bound, s.verdict.ramanujan ? "ramanujan" : "NOT ramanujan");
  if (rep.ramanujan) std::printf("ramanujan: %s\n", *rep.ramanujan ? "yes" : "no");
  if (!rep.identities.empty()) {
    std::size_t failed = 0;
    for (const auto& c : rep.identities) failed += c.pass ? 0 : 1;
    std::printf("identities: %zu checks, %zu failed\n", rep.identities.size(), failed);
  }
  if (!rep.cohomology.empty()) {
    std::printf("cohomology:");
    for (auto h : rep.cohomology) std::printf(" %zu", h);
    std::printf("\n");
  }
  if (rep.girth) {
    const auto& g = *rep.girth;
    if (g.girth)
      std::printf("girth: %zu (bound %zu)\n", *g.girth, g.bound);
    else
      std::printf("girth: > %zu (bound %zu, depth %zu)\n", g.lower_bound - 1, g.bound, g.depth_reached);
  }
  for (const auto& f : rep.written) std::printf("wrote %s\n", f.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic cube complexes, local systems and their spectra"};
  app.set_version_flag("--version", std::string(ramcube::kVersion));
  app.require_subcommand(1);
  Flags flags;
  const char* names[] = {"build", "verify", "spectrum", "ramanujan", "girth", "cohomology", "export-dot", "report"};
  const char* help[] = {
      "build the complex and check the axioms",
      "check axioms, parities, flatness and operator identities",
      "compute star-operator spectra for every (j, I)",
      "classify spectra and decide the Ramanujan property",
      "search the girth of the 1-skeleton",
      "compute cohomology dimensions",
      "write the 1-skeleton as DOT",
      "run every stage and write the full report",
  };
  for (std::size_t i = 0; i < std::size(names); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", flags.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output directory (default: config 'out' or .)");
    sub->add_option("--tol", flags.tol, "classification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-dim", flags.max_dim, "dense solver dimension cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-depth", flags.max_depth, "girth search depth")->check(CLI::Range(1, 64));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ramcube::kExitConfig;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const auto cmd = ramcube::command_from_name(sub->get_name());
  ramcube::RunConfig cfg;
  try {
    cfg = ramcube::parse_config(flags.config);
  } catch (const ramcube::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ramcube::kExitConfig;
  }
  if (flags.tol) cfg.tol = *flags.tol;
  if (flags.max_dim) cfg.max_dim = *flags.max_dim;
  if (flags.max_depth) cfg.max_depth = *flags.max_depth;
  const std::string out = !flags.out.empty() ? flags.out : (!cfg.out.empty() ? cfg.out : ".");

  try {
    std::filesystem::create_directories(out);
  } catch (const std::exception& e) {
    std::cerr << "cannot create output directory: " << e.what() << "\n";
    return ramcube::kExitInternal;
  }
  const ramcube::RunReport rep = ramcube::run(cfg, *cmd, out);
  print_summary(rep);
  if (rep.exit_code == ramcube::kExitVerification)
    std::cerr << sub->get_name() << ": verification negative: " << rep.error << "\n";
  else if (rep.exit_code != ramcube::kExitOk)
    std::cerr << sub->get_name() << " failed at stage '" << rep.stage << "': " << rep.error << "\n";
  return rep.exit_code;
}

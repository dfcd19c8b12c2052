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

// Run configuration, staged orchestration and report/CSV/DOT output.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramcube/arith.hpp"
#include "ramcube/harmonic.hpp"

namespace ramcube {

inline constexpr const char* kVersion = RAMCUBE_VERSION;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitConstruction = 3,
  kExitVerification = 4,
  kExitInternal = 5,
};

struct RunConfig {
  std::vector<std::int64_t> primes;
  std::optional<std::int64_t> n1;  // empty: search odd primes ascending
  int k = 0;                       // 0: trivial coefficients
  std::string out;                 // empty: the --out flag or "."
  double tol = 1e-8;               // eigenvalue classification and Ramanujan slack
  std::size_t max_dim = 20000;     // dense solver cap
  std::size_t max_depth = 12;      // girth search depth
};

// Strict parsing: unknown keys, wrong types and constraint violations throw
// ConfigError.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

// Canonical JSON (sorted keys, no whitespace) and its 64-bit FNV-1a hash.
std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

enum class Command { kBuild, kVerify, kSpectrum, kRamanujan, kGirth, kCohomology, kExportDot, kReport };

std::optional<Command> command_from_name(const std::string& name);
const char* command_name(Command c);

struct SpectrumSummary {
  int direction = 0;  // 0-based
  DirSet dirs = 0;
  std::size_t dim = 0;
  std::size_t components = 0;
  RamanujanVerdict verdict;
  std::vector<double> eigenvalues;  // descending
};

struct RunReport {
  int exit_code = kExitOk;
  std::string stage;  // "done", or the stage that failed
  std::string error;
  std::int64_t n1 = 0;
  std::size_t vertices = 0;
  std::vector<SpectrumSummary> spectra;
  std::optional<bool> ramanujan;
  std::vector<std::size_t> cohomology;
  std::optional<std::int64_t> euler_characteristic;
  std::optional<GirthResult> girth;
  std::vector<IdentityCheck> identities;
  std::string json;  // contents of report.json
  std::vector<std::string> written;  // files written, in order
};

// Runs the stages needed by `cmd` and writes report.json (always),
// spectrum.csv and complex.dot (when produced) into `out_dir`. Stage
// failures are caught and recorded; the report is still written.
RunReport run(const RunConfig& cfg, Command cmd, const std::string& out_dir);

// Spectrum CSV text: j (1-based), I bitmask (bit j-1 for direction j),
// index, eigenvalue, class.
std::string spectrum_csv(const std::vector<SpectrumSummary>& spectra, double tol);

}  // namespace ramcube

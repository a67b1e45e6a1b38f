// Copyright 2026 The mpteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpteleport/experiments.hpp"
#include "mpteleport/output.hpp"

namespace mpt::cli {

enum class Command { Thresholds, Crossover, Sweep, Verify, OptimalN };

const char* to_string(Command command);

struct RunConfig {
  Command command = Command::Thresholds;
  std::string carrier = "all";  // cs | psp | vsp | all
  std::vector<int> n_photons;
  std::vector<double> alphas;
  std::vector<double> targets{0.999, 0.99, 0.90};
  std::optional<double> eta_m;
  std::optional<double> eta_c;
  int figure = 3;
  experiments::Grid eta_m_grid{0.0, 1.0, 51};
  experiments::Grid eta_c_grid{0.0, 1.0, 51};
  std::string reference = "both";  // psp | vsp | both
  double alpha_min = 0.5;
  double alpha_max = 1.5;
  int grid_points = 512;
  int quadrature_order = 64;
  int fock_dim = 24;
  int cases = 200;
  std::uint64_t seed = 20210101;
  std::string output_path;
  io::Format format = io::Format::Csv;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "min:max:count"
experiments::Grid parse_grid(const std::string& spec);

/// Throws UsageError on an inconsistent configuration.
void validate(const RunConfig& config);

/// Full configuration echo for output headers.
io::Metadata describe(const RunConfig& config);

/// Executes a validated config, writing results to out and one line per stage
/// to log. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Parses flags (and an optional --config key=value file; flags win), runs,
/// and maps errors to exit codes: 0 success, 1 verification failure, 2 usage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace mpt::cli

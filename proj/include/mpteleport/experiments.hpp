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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpteleport/analytics.hpp"
#include "mpteleport/core_model.hpp"
#include "mpteleport/numerics.hpp"

namespace mpt::experiments {

// -- loss thresholds ---------------------------------------------------------

enum class ChannelKind { Direct, CoherentState, PSP, VSP };

struct ThresholdChannel {
  ChannelKind kind;
  int n_photons = 4;   // Direct only
  double alpha = 0.0;  // CoherentState only

  static ThresholdChannel direct(int n) { return {ChannelKind::Direct, n, 0.0}; }
  static ThresholdChannel coherent(double alpha) { return {ChannelKind::CoherentState, 4, alpha}; }
  static ThresholdChannel psp() { return {ChannelKind::PSP, 4, 0.0}; }
  static ThresholdChannel vsp() { return {ChannelKind::VSP, 4, 0.0}; }

  std::string label() const;
};

/// DT (N = 4), CS alpha = 1.2, CS alpha = 1.6, PSP, VSP.
std::vector<ThresholdChannel> table_one_channels();

/// Average fidelity of a channel at loss rate eta (carrier side for the
/// teleportation channels, every photon for direct transmission).
double channel_fidelity(const ThresholdChannel& channel, double eta,
                        const numerics::QuadratureRule& rule);

struct ThresholdRow {
  double target_fidelity;
  ThresholdChannel channel;
  /// Empty when the target is not reached anywhere on the bracket.
  std::optional<double> eta_max;
  double fidelity_at_threshold = 0.0;
  int iterations = 0;
};

struct ThresholdOptions {
  int quadrature_order = 64;
  double tol = 1e-10;
  double eta_upper = 1.0 - 1e-9;
};

std::vector<ThresholdRow> threshold_table(std::span<const double> targets,
                                          std::span<const ThresholdChannel> channels,
                                          const ThresholdOptions& options = {});

/// Round to the given number of significant figures.
double round_significant(double x, int digits);

// -- crossover amplitude -----------------------------------------------------

enum class CrossoverReference { PSP, VSP };

const char* to_string(CrossoverReference ref);

/// t_k = k / (n + 1), k = 1..n: n points strictly inside (0, 1).
std::vector<double> open_unit_grid(int n);

/// min over grid t_C of [F_ave^cs(t_C; alpha) - F_ref(t_C)].
double dominance_margin(double alpha, CrossoverReference ref, std::span<const double> t_grid,
                        const numerics::QuadratureRule& rule);

struct CrossoverOptions {
  int grid_points = 512;
  int quadrature_order = 64;
  double tol = 1e-4;
  /// Also solve on a grid of twice the density and record the shift.
  bool check_grid_doubling = true;
};

struct CrossoverResult {
  CrossoverReference reference;
  double alpha_star;
  numerics::BracketedRoot root;
  int grid_points;
  /// |alpha*(2n grid) - alpha*(n grid)|, if computed.
  std::optional<double> doubling_shift;
};

/// Largest alpha below which the coherent carrier beats the reference on
/// every grid point of t_C.
CrossoverResult crossover_alpha(CrossoverReference ref, double alpha_lo, double alpha_hi,
                                const CrossoverOptions& options = {});

// -- figure data -------------------------------------------------------------

enum class FigureKind { NegativitySurface, AvgFidelityCurves, SuccessProbCurves };

struct Grid {
  double min = 0.0;
  double max = 1.0;
  int count = 51;
  std::vector<double> values() const;
};

struct SweepConfig {
  Grid eta_m{0.0, 1.0, 51};
  Grid eta_c{0.0, 1.0, 51};
  int n_photons = 4;
  std::vector<double> alphas;       // empty: per-figure default
  std::vector<int> photon_numbers;  // empty: per-figure default
  int quadrature_order = 64;
};

struct Axis {
  std::string name;
  std::vector<double> values;
};

/// Values are row-major over the axes (last axis fastest), with the series
/// index fastest of all: values[point * series.size() + s].
struct SweepResult {
  std::vector<Axis> axes;
  std::vector<std::string> series;
  std::vector<double> values;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t point_count() const;
  double at(std::size_t point, std::size_t series_index) const {
    return values[point * series.size() + series_index];
  }
};

SweepResult figure_sweep(FigureKind kind, const SweepConfig& config);

// -- oracle equivalence --------------------------------------------------------

struct EquivalenceCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  /// Unenforced checks are reported but do not fail the suite.
  bool enforced = true;
  int cases = 0;
  std::string worst_case;

  bool passed() const { return max_deviation < tolerance; }
};

struct EquivalenceOptions {
  std::vector<int> photon_numbers{1, 2, 3};
  std::vector<CarrierSpec> carriers{CarrierSpec::psp(), CarrierSpec::vsp(),
                                    CarrierSpec::coherent(0.8), CarrierSpec::coherent(1.2),
                                    CarrierSpec::coherent(1.6)};
  int fock_dim = 24;
  /// Transmittances are drawn uniformly from [t_min, 1].
  double t_min = 0.1;
  double discrete_tol = 1e-8;
  double coherent_tol = 1e-6;
  double probability_tol = 1e-8;
  double negativity_tol = 1e-6;
};

struct EquivalenceReport {
  std::uint64_t seed = 0;
  int cases_per_configuration = 0;
  std::vector<EquivalenceCheck> checks;
  /// One line per enforced check that exceeded its tolerance.
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
  const EquivalenceCheck* find(const std::string& name) const;
};

/// For every carrier and photon number, draws n_cases random (theta, phi,
/// t_M, t_C), runs the full oracle pipeline and compares fidelities per Bell
/// branch, q_i-weighted branch weights and negativity against analytics.
EquivalenceReport oracle_equivalence_suite(std::uint64_t seed, int n_cases,
                                           const EquivalenceOptions& options = {});

}  // namespace mpt::experiments

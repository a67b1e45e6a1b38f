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

#include "mpteleport/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mpteleport/fock_oracle.hpp"

namespace mpt::experiments {

std::string ThresholdChannel::label() const {
  std::ostringstream os;
  switch (kind) {
    case ChannelKind::Direct: os << "DT(N=" << n_photons << ")"; break;
    case ChannelKind::CoherentState: os << "CS(alpha=" << alpha << ")"; break;
    case ChannelKind::PSP: os << "PSP"; break;
    case ChannelKind::VSP: os << "VSP"; break;
  }
  return os.str();
}

std::vector<ThresholdChannel> table_one_channels() {
  return {ThresholdChannel::direct(4), ThresholdChannel::coherent(1.2),
          ThresholdChannel::coherent(1.6), ThresholdChannel::psp(), ThresholdChannel::vsp()};
}

double channel_fidelity(const ThresholdChannel& channel, double eta,
                        const numerics::QuadratureRule& rule) {
  switch (channel.kind) {
    case ChannelKind::Direct: return analytics::fidelity_direct(channel.n_photons, eta);
    case ChannelKind::PSP:
      return analytics::teleport_fidelity_psp(transmittance_from_loss_rate(eta));
    case ChannelKind::VSP:
      return analytics::average_fidelity_value(CarrierSpec::vsp(), transmittance_from_loss_rate(eta),
                                               rule);
    case ChannelKind::CoherentState:
      return analytics::average_fidelity_value(CarrierSpec::coherent(channel.alpha),
                                               transmittance_from_loss_rate(eta), rule);
  }
  throw std::logic_error("unknown channel kind");
}

std::vector<ThresholdRow> threshold_table(std::span<const double> targets,
                                          std::span<const ThresholdChannel> channels,
                                          const ThresholdOptions& options) {
  const numerics::QuadratureRule rule(options.quadrature_order, options.quadrature_order);
  std::vector<ThresholdRow> rows;
  for (double target : targets) {
    if (!(target > 2.0 / 3.0 && target < 1.0)) {
      throw std::domain_error("threshold target must lie in (2/3, 1)");
    }
    for (const auto& channel : channels) {
      ThresholdRow row{target, channel, std::nullopt, 0.0, 0};
      const auto excess = [&](double eta) { return channel_fidelity(channel, eta, rule) - target; };
      // First sign change on a coarse scan; the coherent carrier's fidelity
      // turns back up towards 1 as t_C -> 0, so [0, eta_upper] is not monotone.
      constexpr int kScan = 256;
      double lo = 0.0;
      std::optional<double> hi;
      for (int s = 1; s <= kScan; ++s) {
        const double eta = options.eta_upper * s / kScan;
        if (excess(eta) < 0.0) {
          hi = eta;
          break;
        }
        lo = eta;
      }
      if (!hi) {
        rows.push_back(row);
        continue;
      }
      try {
        const auto root = numerics::bisect(excess, lo, *hi, options.tol);
        row.eta_max = root.root;
        row.fidelity_at_threshold = channel_fidelity(channel, root.root, rule);
        row.iterations = root.iterations;
      } catch (const numerics::BracketError&) {
        // target never crossed on the bracket: reported as no threshold
      }
      rows.push_back(row);
    }
  }
  return rows;
}

double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const double magnitude = std::floor(std::log10(std::abs(x)));
  const double scale = std::pow(10.0, digits - 1 - magnitude);
  return std::round(x * scale) / scale;
}

const char* to_string(CrossoverReference ref) {
  return ref == CrossoverReference::PSP ? "psp" : "vsp";
}

std::vector<double> open_unit_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) grid[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) / (n + 1);
  return grid;
}

double dominance_margin(double alpha, CrossoverReference ref, std::span<const double> t_grid,
                        const numerics::QuadratureRule& rule) {
  const CarrierSpec cs = CarrierSpec::coherent(alpha);
  double margin = INFINITY;
  for (double t : t_grid) {
    const double f_ref = ref == CrossoverReference::PSP
                             ? analytics::teleport_fidelity_psp(t)
                             : analytics::average_fidelity_value(CarrierSpec::vsp(), t, rule);
    margin = std::min(margin, analytics::average_fidelity_value(cs, t, rule) - f_ref);
  }
  return margin;
}

CrossoverResult crossover_alpha(CrossoverReference ref, double alpha_lo, double alpha_hi,
                                const CrossoverOptions& options) {
  const numerics::QuadratureRule rule(options.quadrature_order, options.quadrature_order);
  const auto solve = [&](int points) {
    const std::vector<double> grid = open_unit_grid(points);
    return numerics::bisect(
        [&](double alpha) { return dominance_margin(alpha, ref, grid, rule); }, alpha_lo, alpha_hi,
        options.tol);
  };
  const auto root = solve(options.grid_points);
  CrossoverResult result{ref, root.root, root, options.grid_points, std::nullopt};
  if (options.check_grid_doubling) {
    result.doubling_shift = std::abs(solve(2 * options.grid_points).root - root.root);
  }
  return result;
}

std::vector<double> Grid::values() const {
  if (count < 2 || !(min < max)) throw std::invalid_argument("grid needs min < max and count >= 2");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] = min + (max - min) * i / (count - 1);
  }
  v.back() = max;
  return v;
}

std::size_t SweepResult::point_count() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.values.size();
  return n;
}

namespace {

std::string format_list(const std::vector<double>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

SweepResult negativity_surface(const SweepConfig& config) {
  const double alpha = config.alphas.empty() ? 1.2 : config.alphas.front();
  const int n = config.n_photons;
  SweepResult out;
  out.axes = {{"eta_M", config.eta_m.values()}, {"eta_C", config.eta_c.values()}};
  out.series = {"N_mc", "N_mc_exact", "N_mp", "N_ms"};
  for (double eta_m : out.axes[0].values) {
    for (double eta_c : out.axes[1].values) {
      const auto loss = LossParams::from_loss_rate(eta_m, eta_c);
      const double discrete = analytics::negativity_discrete(n, loss.t_m(), loss.t_c());
      out.values.push_back(analytics::negativity_mc(n, loss.t_m(), loss.t_c(), alpha).value);
      out.values.push_back(analytics::negativity_mc_exact(n, loss.t_m(), loss.t_c(), alpha).value);
      out.values.push_back(discrete);
      out.values.push_back(discrete);
    }
  }
  out.metadata = {{"figure_data", "negativity_surface"}, {"n_photons", std::to_string(n)},
                  {"alpha", format_list({alpha})}};
  return out;
}

SweepResult avg_fidelity_curves(const SweepConfig& config) {
  const std::vector<double> alphas =
      config.alphas.empty() ? std::vector<double>{1.2, 1.6} : config.alphas;
  const numerics::QuadratureRule rule(config.quadrature_order, config.quadrature_order);
  SweepResult out;
  out.axes = {{"eta_C", config.eta_c.values()}};
  out.series.push_back("F_DT_N" + std::to_string(config.n_photons));
  for (double a : alphas) {
    std::ostringstream name;
    name << "F_CS_" << a;
    out.series.push_back(name.str());
  }
  out.series.insert(out.series.end(), {"F_PSP", "F_VSP", "F_cl"});
  for (double eta : out.axes[0].values) {
    const double t = transmittance_from_loss_rate(eta);
    out.values.push_back(analytics::fidelity_direct(config.n_photons, eta));
    for (double a : alphas) {
      out.values.push_back(analytics::average_fidelity_value(CarrierSpec::coherent(a), t, rule));
    }
    out.values.push_back(analytics::teleport_fidelity_psp(t));
    out.values.push_back(analytics::average_fidelity_value(CarrierSpec::vsp(), t, rule));
    out.values.push_back(analytics::classical_limit(CarrierSpec::psp(), t).value);
  }
  out.metadata = {{"figure_data", "avg_fidelity_curves"},
                  {"n_photons", std::to_string(config.n_photons)},
                  {"alpha", format_list(alphas)},
                  {"quadrature_order", std::to_string(config.quadrature_order)}};
  return out;
}

SweepResult success_prob_curves(const SweepConfig& config) {
  const std::vector<int> ns =
      config.photon_numbers.empty() ? std::vector<int>{1, 2, 3, 4} : config.photon_numbers;
  SweepResult out;
  out.axes = {{"eta_M", config.eta_m.values()}};
  for (int n : ns) out.series.push_back("P_N" + std::to_string(n));
  for (double eta : out.axes[0].values) {
    const double t = transmittance_from_loss_rate(eta);
    for (int n : ns) out.values.push_back(analytics::success_probability(n, t));
  }
  std::vector<double> as_double(ns.begin(), ns.end());
  out.metadata = {{"figure_data", "success_prob_curves"}, {"n_photons", format_list(as_double)}};
  return out;
}

}  // namespace

SweepResult figure_sweep(FigureKind kind, const SweepConfig& config) {
  SweepResult out;
  switch (kind) {
    case FigureKind::NegativitySurface: out = negativity_surface(config); break;
    case FigureKind::AvgFidelityCurves: out = avg_fidelity_curves(config); break;
    case FigureKind::SuccessProbCurves: out = success_prob_curves(config); break;
  }
  if (out.values.size() != out.point_count() * out.series.size()) {
    throw std::logic_error("sweep produced an inconsistent number of values");
  }
  for (double v : out.values) {
    if (!std::isfinite(v)) throw std::runtime_error("sweep produced a non-finite value");
  }
  return out;
}

// -- oracle equivalence --------------------------------------------------------

const EquivalenceCheck* EquivalenceReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

class CheckSet {
 public:
  void declare(const std::string& name, double tol, bool enforced = true) {
    if (!index_.count(name)) {
      index_[name] = checks_.size();
      checks_.push_back(EquivalenceCheck{name, 0.0, tol, enforced, 0, ""});
    }
  }
  void record(const std::string& name, double deviation, const std::string& where) {
    auto& c = checks_[index_.at(name)];
    ++c.cases;
    if (deviation > c.max_deviation || c.worst_case.empty()) {
      c.max_deviation = std::max(c.max_deviation, deviation);
      c.worst_case = where;
    }
  }
  std::vector<EquivalenceCheck> take() { return std::move(checks_); }

 private:
  std::vector<EquivalenceCheck> checks_;
  std::map<std::string, std::size_t> index_;
};

std::string carrier_label(const CarrierSpec& c) {
  std::ostringstream os;
  os << to_string(c.kind());
  if (c.is_coherent()) os << "(alpha=" << c.alpha() << ")";
  return os.str();
}

}  // namespace

EquivalenceReport oracle_equivalence_suite(std::uint64_t seed, int n_cases,
                                           const EquivalenceOptions& options) {
  if (n_cases < 1) throw std::invalid_argument("need at least one case");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  CheckSet checks;
  checks.declare("fidelity/psp", options.discrete_tol);
  checks.declare("fidelity/vsp", options.discrete_tol);
  checks.declare("fidelity/vsp-printed-polynomial", options.discrete_tol, false);
  checks.declare("fidelity/cs", options.coherent_tol);
  checks.declare("success-probability", options.probability_tol);
  checks.declare("negativity/discrete", options.negativity_tol);
  checks.declare("negativity/cs", options.negativity_tol);
  checks.declare("negativity/cs-printed-formula", options.negativity_tol, false);

  for (const auto& carrier : options.carriers) {
    for (int n : options.photon_numbers) {
      const oracle::PureState hybrid =
          oracle::make_hybrid_state(MultiphotonSpec(n), carrier, options.fock_dim);
      const oracle::DensityMatrix pure_channel = oracle::DensityMatrix::from_pure(hybrid);
      const std::size_t carrier_index = static_cast<std::size_t>(n);
      const std::size_t carrier_modes[] = {carrier_index};

      for (int k = 0; k < n_cases; ++k) {
        const double theta = std::acos(1.0 - 2.0 * unit(rng));
        const double phi = 2.0 * kPi * unit(rng);
        const double t_m = options.t_min + (1.0 - options.t_min) * unit(rng);
        const double t_c = options.t_min + (1.0 - options.t_min) * unit(rng);
        const BlochQubit q(theta, phi);

        std::ostringstream where;
        where.precision(17);
        where << carrier_label(carrier) << " N=" << n << " case=" << k << " theta=" << theta
              << " phi=" << phi << " t_M=" << t_m << " t_C=" << t_c;

        oracle::DensityMatrix channel = pure_channel;
        for (std::size_t m = 0; m < carrier_index; ++m) channel = oracle::apply_loss(channel, m, t_m);
        channel = oracle::apply_loss(channel, carrier_index, t_c);

        const oracle::PureState input = oracle::make_multiphoton_qubit(q, MultiphotonSpec(n));
        double p_oracle = 0.0;
        for (int i = 1; i <= 4; ++i) {
          const oracle::BellBranch branch = oracle::bell_project(input, channel, i);
          p_oracle += oracle::bsm_identification_probability(n, i) * branch.weight;
          const oracle::PureState target =
              oracle::branch_target(carrier, t_c, q, i, options.fock_dim);
          const double f_oracle = oracle::fidelity_with_pure(branch.normalized(), target);
          switch (carrier.kind()) {
            case CarrierKind::PSP:
              checks.record("fidelity/psp", std::abs(f_oracle - analytics::teleport_fidelity_psp(t_c)),
                            where.str());
              break;
            case CarrierKind::VSP: {
              const BlochQubit effective = i <= 2 ? q : q.swapped();
              checks.record("fidelity/vsp",
                            std::abs(f_oracle -
                                     analytics::teleport_fidelity_vsp_output_state(t_c, effective)),
                            where.str());
              checks.record("fidelity/vsp-printed-polynomial",
                            std::abs(f_oracle - analytics::teleport_fidelity_vsp(t_c, effective)),
                            where.str());
              break;
            }
            case CarrierKind::CoherentState: {
              const auto sign = i % 2 == 1 ? analytics::Branch::Plus : analytics::Branch::Minus;
              checks.record("fidelity/cs",
                            std::abs(f_oracle -
                                     analytics::teleport_fidelity_cs(t_c, carrier.alpha(), q, sign)),
                            where.str());
              break;
            }
          }
        }
        const double p_closed = carrier.is_coherent()
                                    ? analytics::success_probability_cs(n, t_m, carrier.alpha(), q)
                                    : analytics::success_probability(n, t_m);
        checks.record("success-probability", std::abs(p_oracle - p_closed), where.str());

        const double neg_oracle = oracle::negativity(channel, carrier_modes);
        if (carrier.is_coherent()) {
          checks.record("negativity/cs",
                        std::abs(neg_oracle -
                                 analytics::negativity_mc_exact(n, t_m, t_c, carrier.alpha()).value),
                        where.str());
          checks.record("negativity/cs-printed-formula",
                        std::abs(neg_oracle - analytics::negativity_mc(n, t_m, t_c, carrier.alpha()).value),
                        where.str());
        } else {
          checks.record("negativity/discrete",
                        std::abs(neg_oracle - analytics::negativity_discrete(n, t_m, t_c)), where.str());
        }
      }
    }
  }

  EquivalenceReport report;
  report.seed = seed;
  report.cases_per_configuration = n_cases;
  report.checks = checks.take();
  for (const auto& c : report.checks) {
    if (c.enforced && c.cases > 0 && !c.passed()) {
      std::ostringstream os;
      os.precision(3);
      os << c.name << ": max deviation " << std::scientific << c.max_deviation << " >= tolerance "
         << c.tolerance << " at " << c.worst_case;
      report.failures.push_back(os.str());
    }
  }
  return report;
}

}  // namespace mpt::experiments

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

#include "run_config.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "mpteleport/analytics.hpp"

namespace mpt::cli {

namespace {

constexpr const char* kCodeVersion = "mpteleport 0.1.0";

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{{"thresholds", Command::Thresholds},
                                                    {"crossover", Command::Crossover},
                                                    {"sweep", Command::Sweep},
                                                    {"verify", Command::Verify},
                                                    {"optimal-n", Command::OptimalN}};
  return names;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + io::format_double(xs[i]);
  return s;
}

std::string join(const std::vector<int>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string grid_string(const experiments::Grid& g) {
  return io::format_double(g.min) + ":" + io::format_double(g.max) + ":" + std::to_string(g.count);
}

std::vector<int> or_default(const std::vector<int>& xs, std::vector<int> fallback) {
  return xs.empty() ? fallback : xs;
}

std::vector<double> or_default(const std::vector<double>& xs, std::vector<double> fallback) {
  return xs.empty() ? fallback : xs;
}

int run_thresholds(const RunConfig& config, std::ostream& out, std::ostream& log) {
  std::vector<experiments::ThresholdChannel> channels;
  const int n_direct = config.n_photons.empty() ? 4 : config.n_photons.front();
  const bool all = config.carrier == "all";
  if (all) channels.push_back(experiments::ThresholdChannel::direct(n_direct));
  if (all || config.carrier == "cs") {
    for (double a : or_default(config.alphas, {1.2, 1.6})) {
      channels.push_back(experiments::ThresholdChannel::coherent(a));
    }
  }
  if (all || config.carrier == "psp") channels.push_back(experiments::ThresholdChannel::psp());
  if (all || config.carrier == "vsp") channels.push_back(experiments::ThresholdChannel::vsp());

  log << "thresholds: " << config.targets.size() << " targets x " << channels.size() << " channels\n";
  experiments::ThresholdOptions options;
  options.quadrature_order = config.quadrature_order;
  const auto rows = experiments::threshold_table(config.targets, channels, options);
  io::write_thresholds(out, rows, describe(config), config.format);
  return 0;
}

int run_crossover(const RunConfig& config, std::ostream& out, std::ostream& log) {
  std::vector<experiments::CrossoverReference> refs;
  if (config.reference == "psp" || config.reference == "both") refs.push_back(experiments::CrossoverReference::PSP);
  if (config.reference == "vsp" || config.reference == "both") refs.push_back(experiments::CrossoverReference::VSP);
  experiments::CrossoverOptions options;
  options.grid_points = config.grid_points;
  options.quadrature_order = config.quadrature_order;
  std::vector<experiments::CrossoverResult> results;
  for (auto ref : refs) {
    log << "crossover: solving against " << experiments::to_string(ref) << '\n';
    results.push_back(experiments::crossover_alpha(ref, config.alpha_min, config.alpha_max, options));
  }
  io::Metadata meta = describe(config);
  meta.emplace_back("t_grid", "k/(n+1), k=1..n; t_C = 0 and t_C = 1 excluded");
  io::write_crossovers(out, results, meta, config.format);
  return 0;
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& log) {
  experiments::SweepConfig sweep;
  sweep.eta_m = config.eta_m_grid;
  sweep.eta_c = config.eta_c_grid;
  sweep.quadrature_order = config.quadrature_order;
  sweep.alphas = config.alphas;
  experiments::FigureKind kind = experiments::FigureKind::AvgFidelityCurves;
  switch (config.figure) {
    case 2:
      kind = experiments::FigureKind::NegativitySurface;
      sweep.n_photons = config.n_photons.empty() ? 4 : config.n_photons.front();
      break;
    case 3:
      kind = experiments::FigureKind::AvgFidelityCurves;
      sweep.n_photons = config.n_photons.empty() ? 4 : config.n_photons.front();
      break;
    case 4:
      kind = experiments::FigureKind::SuccessProbCurves;
      sweep.photon_numbers = config.n_photons;
      break;
    default: throw UsageError("--figure must be 2, 3 or 4");
  }
  log << "sweep: figure " << config.figure << '\n';
  io::write_sweep(out, experiments::figure_sweep(kind, sweep), describe(config), config.format);
  return 0;
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& log) {
  experiments::EquivalenceOptions options;
  options.photon_numbers = or_default(config.n_photons, {1, 2, 3});
  options.fock_dim = config.fock_dim;
  options.carriers.clear();
  const bool all = config.carrier == "all";
  if (all || config.carrier == "psp") options.carriers.push_back(CarrierSpec::psp());
  if (all || config.carrier == "vsp") options.carriers.push_back(CarrierSpec::vsp());
  if (all || config.carrier == "cs") {
    for (double a : or_default(config.alphas, {0.8, 1.2, 1.6})) {
      options.carriers.push_back(CarrierSpec::coherent(a));
    }
  }
  log << "verify: " << options.carriers.size() << " carriers x " << options.photon_numbers.size()
      << " photon numbers x " << config.cases << " cases (seed " << config.seed << ")\n";
  const auto report = experiments::oracle_equivalence_suite(config.seed, config.cases, options);
  io::write_equivalence(out, report, describe(config), config.format);
  for (const auto& failure : report.failures) log << "FAIL " << failure << '\n';
  return report.passed() ? 0 : 1;
}

int run_optimal_n(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (!config.eta_m) throw UsageError("optimal-n needs --eta (eta_M)");
  const auto n_opt = analytics::optimal_photon_number(*config.eta_m);
  log << "optimal-n: eta_M = " << *config.eta_m << '\n';
  const io::Metadata meta = describe(config);
  if (config.format == io::Format::Json) {
    out << "{\n  \"meta\": {";
    for (std::size_t i = 0; i < meta.size(); ++i) {
      out << (i ? ", " : "") << '"' << meta[i].first << "\": \"" << meta[i].second << '"';
    }
    out << "},\n  \"axes\": [{\"name\": \"eta_M\", \"values\": [" << io::format_double(*config.eta_m)
        << "]}],\n  \"values\": [" << (n_opt ? std::to_string(*n_opt) : "null") << "]\n}\n";
  } else {
    for (const auto& [k, v] : meta) out << "# " << k << " = " << v << '\n';
    out << "eta_M,n_opt\n"
        << io::format_double(*config.eta_m) << ',' << (n_opt ? std::to_string(*n_opt) : "none") << '\n';
  }
  return 0;
}

}  // namespace

const char* to_string(Command command) {
  for (const auto& [name, c] : command_names()) {
    if (c == command) return name.c_str();
  }
  return "?";
}

experiments::Grid parse_grid(const std::string& spec) {
  std::istringstream is(spec);
  std::string lo, hi, count;
  if (!std::getline(is, lo, ':') || !std::getline(is, hi, ':') || !std::getline(is, count)) {
    throw UsageError("grid must look like min:max:count, got '" + spec + "'");
  }
  try {
    std::size_t used = 0;
    experiments::Grid g{std::stod(lo), std::stod(hi), std::stoi(count, &used)};
    if (used != count.size()) throw std::invalid_argument("count");
    return g;
  } catch (const std::exception&) {
    throw UsageError("grid must look like min:max:count, got '" + spec + "'");
  }
}

void validate(const RunConfig& config) {
  const auto check_grid = [](const experiments::Grid& g, const char* name) {
    if (!(g.min < g.max) || g.count < 2) {
      throw UsageError(std::string(name) + " grid needs min < max and count >= 2");
    }
    if (g.min < 0.0 || g.max > 1.0) throw UsageError(std::string(name) + " grid must lie in [0, 1]");
  };
  check_grid(config.eta_m_grid, "eta-m");
  check_grid(config.eta_c_grid, "eta-c");
  for (int n : config.n_photons) {
    if (n < 1) throw UsageError("photon numbers must be >= 1");
  }
  for (double a : config.alphas) {
    if (!(a > 0.0)) throw UsageError("alpha must be positive");
  }
  for (double t : config.targets) {
    if (!(t > 2.0 / 3.0 && t < 1.0)) throw UsageError("targets must lie in (2/3, 1)");
  }
  if (config.eta_m && !(*config.eta_m >= 0.0 && *config.eta_m <= 1.0)) {
    throw UsageError("--eta-m must lie in [0, 1]");
  }
  if (config.eta_c && !(*config.eta_c >= 0.0 && *config.eta_c <= 1.0)) {
    throw UsageError("--eta-c must lie in [0, 1]");
  }
  if (config.quadrature_order < 2) throw UsageError("--quad-order must be >= 2");
  if (config.grid_points < 2) throw UsageError("--grid-points must be >= 2");
  if (config.cases < 1) throw UsageError("--cases must be >= 1");
  if (!(config.alpha_min > 0.0 && config.alpha_min < config.alpha_max)) {
    throw UsageError("--alpha-min must be positive and below --alpha-max");
  }
  if (config.command == Command::Sweep && (config.figure < 2 || config.figure > 4)) {
    throw UsageError("--figure must be 2, 3 or 4");
  }
}

io::Metadata describe(const RunConfig& config) {
  io::Metadata meta{{"code_version", kCodeVersion},
                    {"command", to_string(config.command)},
                    {"carrier", config.carrier},
                    {"n_photons", join(config.n_photons)},
                    {"alpha", join(config.alphas)},
                    {"quadrature_order", std::to_string(config.quadrature_order)}};
  switch (config.command) {
    case Command::Thresholds: meta.emplace_back("targets", join(config.targets)); break;
    case Command::Crossover:
      meta.emplace_back("reference", config.reference);
      meta.emplace_back("alpha_bracket", io::format_double(config.alpha_min) + ":" +
                                             io::format_double(config.alpha_max));
      meta.emplace_back("grid_points", std::to_string(config.grid_points));
      break;
    case Command::Sweep:
      meta.emplace_back("figure", std::to_string(config.figure));
      meta.emplace_back("eta_m_grid", grid_string(config.eta_m_grid));
      meta.emplace_back("eta_c_grid", grid_string(config.eta_c_grid));
      break;
    case Command::Verify:
      meta.emplace_back("seed", std::to_string(config.seed));
      meta.emplace_back("cases", std::to_string(config.cases));
      meta.emplace_back("fock_dim", std::to_string(config.fock_dim));
      break;
    case Command::OptimalN:
      if (config.eta_m) meta.emplace_back("eta_m", io::format_double(*config.eta_m));
      break;
  }
  return meta;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
  switch (config.command) {
    case Command::Thresholds: return run_thresholds(config, out, log);
    case Command::Crossover: return run_crossover(config, out, log);
    case Command::Sweep: return run_sweep(config, out, log);
    case Command::Verify: return run_verify(config, out, log);
    case Command::OptimalN: return run_optimal_n(config, out, log);
  }
  return 2;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Loss-tolerant teleportation of multiphoton qubits: closed forms, Fock-space oracle "
               "and reproduction harness",
               "mpteleport"};
  RunConfig config;
  std::string command;
  std::string format = "csv";
  std::string eta_m_grid = grid_string(config.eta_m_grid);
  std::string eta_c_grid = grid_string(config.eta_c_grid);
  std::vector<std::string> command_list;
  for (const auto& [name, c] : command_names()) command_list.push_back(name);

  app.add_option("command", command, "thresholds | crossover | sweep | verify | optimal-n")
      ->required()
      ->check(CLI::IsMember(command_list));
  app.set_config("--config", "", "flat key=value configuration file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--carrier", config.carrier, "carrier selection")
      ->check(CLI::IsMember({"cs", "psp", "vsp", "all"}))
      ->capture_default_str();
  app.add_option("--n,--n-photons", config.n_photons, "photon number(s) N")->delimiter(',');
  app.add_option("--alpha", config.alphas, "coherent amplitude(s)")->delimiter(',');
  app.add_option("--targets", config.targets, "target fidelities for thresholds")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--eta,--eta-m", config.eta_m, "multiphoton-side loss rate eta_M");
  app.add_option("--eta-c", config.eta_c, "carrier-side loss rate eta_C");
  app.add_option("--figure", config.figure, "figure for sweep: 2, 3 or 4")->capture_default_str();
  app.add_option("--eta-m-grid", eta_m_grid, "eta_M grid min:max:count")->capture_default_str();
  app.add_option("--eta-c-grid", eta_c_grid, "eta_C grid min:max:count")->capture_default_str();
  app.add_option("--reference", config.reference, "crossover reference carrier")
      ->check(CLI::IsMember({"psp", "vsp", "both"}))
      ->capture_default_str();
  app.add_option("--alpha-min", config.alpha_min, "crossover bracket lower end")->capture_default_str();
  app.add_option("--alpha-max", config.alpha_max, "crossover bracket upper end")->capture_default_str();
  app.add_option("--grid-points", config.grid_points, "t_C grid size for crossover")->capture_default_str();
  app.add_option("--quad-order", config.quadrature_order, "Bloch quadrature order per axis")
      ->capture_default_str();
  app.add_option("--fock-dim", config.fock_dim, "Fock truncation for coherent carriers")->capture_default_str();
  app.add_option("--cases", config.cases, "random cases per configuration for verify")->capture_default_str();
  app.add_option("--seed", config.seed, "seed for verify")->capture_default_str();
  app.add_option("--out", config.output_path, "output file (default stdout)");
  app.add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    log << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return 2;
  }

  try {
    config.command = command_names().at(command);
    config.format = io::parse_format(format);
    config.eta_m_grid = parse_grid(eta_m_grid);
    config.eta_c_grid = parse_grid(eta_c_grid);
    validate(config);
  } catch (const std::exception& e) {
    log << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (config.output_path.empty()) return run(config, out, log);
    std::ostringstream buffer;
    const int status = run(config, buffer, log);
    std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      log << "error: cannot open " << config.output_path << " for writing\n";
      return 1;
    }
    file << buffer.str();
    log << "wrote " << config.output_path << '\n';
    return status;
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace mpt::cli

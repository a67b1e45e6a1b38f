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

#include "mpteleport/output.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace mpt::io {

using nlohmann::ordered_json;

namespace {

void write_csv_meta(std::ostream& os, const Metadata& meta) {
  for (const auto& [key, value] : meta) os << "# " << key << " = " << value << '\n';
}

ordered_json meta_json(const Metadata& meta) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : meta) j[key] = value;
  return j;
}

ordered_json number_or_null(const std::optional<double>& x) {
  return x ? ordered_json(*x) : ordered_json(nullptr);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_sweep(std::ostream& os, const experiments::SweepResult& sweep, const Metadata& meta,
                 Format format) {
  // Values the sweep resolved (defaults filled in) replace the config echo.
  Metadata all = meta;
  for (const auto& [key, value] : sweep.metadata) {
    auto it = std::find_if(all.begin(), all.end(), [&](const auto& kv) { return kv.first == key; });
    if (it != all.end()) {
      it->second = value;
    } else {
      all.emplace_back(key, value);
    }
  }
  const std::size_t n_series = sweep.series.size();
  const std::size_t n_points = sweep.point_count();

  if (format == Format::Json) {
    ordered_json j;
    j["meta"] = meta_json(all);
    j["axes"] = ordered_json::array();
    for (const auto& axis : sweep.axes) j["axes"].push_back({{"name", axis.name}, {"values", axis.values}});
    j["series"] = sweep.series;
    j["values"] = sweep.values;
    os << j.dump(2) << '\n';
    return;
  }

  write_csv_meta(os, all);
  for (std::size_t a = 0; a < sweep.axes.size(); ++a) os << (a ? "," : "") << sweep.axes[a].name;
  for (const auto& s : sweep.series) os << ',' << s;
  os << '\n';
  for (std::size_t p = 0; p < n_points; ++p) {
    // decode the row-major point index, last axis fastest
    std::vector<std::size_t> idx(sweep.axes.size());
    std::size_t rem = p;
    for (std::size_t a = sweep.axes.size(); a-- > 0;) {
      idx[a] = rem % sweep.axes[a].values.size();
      rem /= sweep.axes[a].values.size();
    }
    for (std::size_t a = 0; a < sweep.axes.size(); ++a) {
      os << (a ? "," : "") << format_double(sweep.axes[a].values[idx[a]]);
    }
    for (std::size_t s = 0; s < n_series; ++s) os << ',' << format_double(sweep.at(p, s));
    os << '\n';
  }
}

void write_thresholds(std::ostream& os, std::span<const experiments::ThresholdRow> rows,
                      const Metadata& meta, Format format) {
  if (format == Format::Json) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    std::vector<double> targets;
    std::vector<std::string> channels;
    for (const auto& r : rows) {
      if (targets.empty() || targets.back() != r.target_fidelity) targets.push_back(r.target_fidelity);
      const std::string label = r.channel.label();
      if (std::find(channels.begin(), channels.end(), label) == channels.end()) channels.push_back(label);
    }
    j["axes"] = ordered_json::array({{{"name", "target_fidelity"}, {"values", targets}},
                                     {{"name", "channel"}, {"values", channels}}});
    j["values"] = ordered_json::array();
    for (const auto& r : rows) j["values"].push_back(number_or_null(r.eta_max));
    os << j.dump(2) << '\n';
    return;
  }
  write_csv_meta(os, meta);
  os << "target_fidelity,channel,eta_max,eta_max_2sf,fidelity_at_threshold,iterations\n";
  for (const auto& r : rows) {
    os << format_double(r.target_fidelity) << ',' << r.channel.label() << ',';
    if (r.eta_max) {
      os << format_double(*r.eta_max) << ','
         << format_double(experiments::round_significant(*r.eta_max, 2)) << ','
         << format_double(r.fidelity_at_threshold);
    } else {
      os << "none,none,none";
    }
    os << ',' << r.iterations << '\n';
  }
}

void write_crossovers(std::ostream& os, std::span<const experiments::CrossoverResult> results,
                      const Metadata& meta, Format format) {
  if (format == Format::Json) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    std::vector<std::string> refs;
    ordered_json values = ordered_json::array();
    for (const auto& r : results) {
      refs.emplace_back(experiments::to_string(r.reference));
      values.push_back(r.alpha_star);
    }
    j["axes"] = ordered_json::array({{{"name", "reference"}, {"values", refs}}});
    j["values"] = values;
    ordered_json shifts = ordered_json::array();
    for (const auto& r : results) shifts.push_back(number_or_null(r.doubling_shift));
    j["grid_doubling_shift"] = shifts;
    os << j.dump(2) << '\n';
    return;
  }
  write_csv_meta(os, meta);
  os << "reference,alpha_star,bracket_lo,bracket_hi,grid_points,grid_doubling_shift\n";
  for (const auto& r : results) {
    os << experiments::to_string(r.reference) << ',' << format_double(r.alpha_star) << ','
       << format_double(r.root.lo) << ',' << format_double(r.root.hi) << ',' << r.grid_points << ','
       << (r.doubling_shift ? format_double(*r.doubling_shift) : std::string("none")) << '\n';
  }
}

void write_equivalence(std::ostream& os, const experiments::EquivalenceReport& report,
                       const Metadata& meta, Format format) {
  if (format == Format::Json) {
    ordered_json j;
    j["meta"] = meta_json(meta);
    std::vector<std::string> names;
    std::vector<double> devs;
    ordered_json detail = ordered_json::array();
    for (const auto& c : report.checks) {
      names.push_back(c.name);
      devs.push_back(c.max_deviation);
      detail.push_back({{"name", c.name},
                        {"max_deviation", c.max_deviation},
                        {"tolerance", c.tolerance},
                        {"enforced", c.enforced},
                        {"cases", c.cases},
                        {"passed", c.passed()},
                        {"worst_case", c.worst_case}});
    }
    j["axes"] = ordered_json::array({{{"name", "check"}, {"values", names}}});
    j["values"] = devs;
    j["checks"] = detail;
    j["failures"] = report.failures;
    os << j.dump(2) << '\n';
    return;
  }
  write_csv_meta(os, meta);
  os << "check,max_deviation,tolerance,enforced,cases,passed,worst_case\n";
  for (const auto& c : report.checks) {
    os << c.name << ',' << format_double(c.max_deviation) << ',' << format_double(c.tolerance) << ','
       << (c.enforced ? "yes" : "no") << ',' << c.cases << ',' << (c.passed() ? "yes" : "no") << ",\""
       << c.worst_case << "\"\n";
  }
}

}  // namespace mpt::io

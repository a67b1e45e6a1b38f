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

// CSV and JSON emission. CSV files start with '#' metadata lines followed by
// a header row; numbers are written with 17 significant digits. JSON files
// have the shape { "meta": {...}, "axes": [...], "values": [...] } with
// row-major values.

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpteleport/experiments.hpp"

namespace mpt::io {

using Metadata = std::vector<std::pair<std::string, std::string>>;

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

std::string format_double(double x);

void write_sweep(std::ostream& os, const experiments::SweepResult& sweep, const Metadata& meta,
                 Format format);

void write_thresholds(std::ostream& os, std::span<const experiments::ThresholdRow> rows,
                      const Metadata& meta, Format format);

void write_crossovers(std::ostream& os, std::span<const experiments::CrossoverResult> results,
                      const Metadata& meta, Format format);

void write_equivalence(std::ostream& os, const experiments::EquivalenceReport& report,
                       const Metadata& meta, Format format);

}  // namespace mpt::io

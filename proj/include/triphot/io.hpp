// Copyright 2026 The triphot Authors
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

// Experiment configuration documents (JSON) and result files (CSV or JSON).
//
// CSV files start with the line "# triphot v1", followed by a "# meta: " line
// carrying the resolved configuration as compact JSON, a column header, and
// the rows. Numbers are written in shortest round-trip form, so reading a
// file back reproduces every value bit for bit.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "triphot/experiment.hpp"

namespace triphot::io {

using Json = nlohmann::json;

inline constexpr std::string_view kCsvMagic = "# triphot v1";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Parses "0.39", "pi", "-pi/4", "3pi/8", "3*pi/8", "2 pi". With `degrees`
/// plain numbers are read in degrees (expressions with pi are always
/// radians). Throws kParse.
double parse_angle(std::string_view text, bool degrees = false);

/// Builds a config from a parsed document; missing fields keep their
/// defaults, unknown fields are rejected. Angles may be numbers or strings
/// understood by parse_angle(). Errors name the offending field path.
ExperimentConfig config_from_json(const Json& doc, bool degrees = false);

Json to_json(const ExperimentConfig& cfg);

/// Reads and parses a config file. Unreadable files throw kIo; syntax errors
/// throw kParse with line and column.
ExperimentConfig load_config(const std::filesystem::path& path,
                             bool degrees = false);

/// A Monte Carlo run with the settings that produced it.
struct CountRun {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  double duration = 0.0;
  double bin = 0.0;
  std::vector<CountRecord> records;
};

void write_sweep_csv(std::ostream& out, const SweepTable& table);
SweepTable read_sweep_csv(std::istream& in);

void write_counts_csv(std::ostream& out, const CountRun& run);
CountRun read_counts_csv(std::istream& in);

Json to_json(const SweepTable& table);
Json to_json(const CountRun& run);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace triphot::io

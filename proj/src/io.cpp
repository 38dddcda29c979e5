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

#include "triphot/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace triphot::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (s.starts_with('+')) s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_uint(std::string_view s, std::uint64_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

double parse_angle(std::string_view text, bool degrees) {
  const std::string_view original = text;
  text = trim(text);
  double value = 0.0;
  if (parse_number(text, value)) {
    return degrees ? value * kPi / 180.0 : value;
  }

  // [sign][coefficient][*]pi[/denominator]
  double sign = 1.0;
  if (text.starts_with('-')) {
    sign = -1.0;
    text.remove_prefix(1);
  } else if (text.starts_with('+')) {
    text.remove_prefix(1);
  }
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) {
    parse_error("cannot parse angle '" + std::string(original) + "'");
  }
  double coefficient = 1.0;
  std::string_view head = trim(text.substr(0, pi_pos));
  if (head.ends_with('*')) head = trim(head.substr(0, head.size() - 1));
  if (!head.empty() && !parse_number(head, coefficient)) {
    parse_error("cannot parse angle '" + std::string(original) + "'");
  }
  double denominator = 1.0;
  std::string_view tail = trim(text.substr(pi_pos + 2));
  if (!tail.empty()) {
    if (!tail.starts_with('/') || !parse_number(tail.substr(1), denominator) ||
        denominator == 0.0) {
      parse_error("cannot parse angle '" + std::string(original) + "'");
    }
  }
  return sign * coefficient * kPi / denominator;
}

namespace {

class FieldReader {
 public:
  FieldReader(const Json& obj, std::string path, bool degrees)
      : obj_(obj), path_(std::move(path)), degrees_(degrees) {
    if (!obj_.is_object()) fail("", "expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& item : obj_.items()) {
      if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
        fail(item.key(), "unknown field");
      }
    }
  }

  bool has(const char* key) const { return obj_.contains(key); }

  const Json& at(const char* key) const { return obj_.at(key); }

  std::string child(const char* key) const { return path_ + "/" + key; }

  void number(const char* key, double& out) const {
    if (!has(key)) return;
    const Json& v = obj_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    out = v.get<double>();
  }

  void angle(const char* key, double& out) const {
    if (!has(key)) return;
    const Json& v = obj_.at(key);
    if (v.is_number()) {
      out = degrees_ ? v.get<double>() * kPi / 180.0 : v.get<double>();
    } else if (v.is_string()) {
      try {
        out = parse_angle(v.get<std::string>(), degrees_);
      } catch (const Error& e) {
        fail(key, e.what());
      }
    } else {
      fail(key, "expected an angle (number or string such as \"pi/8\")");
    }
  }

  [[noreturn]] void fail(std::string_view key, std::string_view what) const {
    std::string where = path_;
    if (!key.empty()) where += "/" + std::string(key);
    if (where.empty()) where = "/";
    parse_error("config field " + where + ": " + std::string(what));
  }

 private:
  const Json& obj_;
  std::string path_;
  bool degrees_;
};

DetectionMode parse_analysis(const FieldReader& r, const Json& v) {
  if (!v.is_string()) r.fail("analysis", "expected \"none\", \"x\" or \"y\"");
  const auto s = v.get<std::string>();
  if (s == "none") return DetectionMode::kDirectXY;
  if (s == "x") return DetectionMode::kAnalysisX;
  if (s == "y") return DetectionMode::kAnalysisY;
  r.fail("analysis", "expected \"none\", \"x\" or \"y\", got \"" + s + "\"");
}

}  // namespace

ExperimentConfig config_from_json(const Json& doc, bool degrees) {
  ExperimentConfig cfg;
  const FieldReader top(doc, "", degrees);
  top.allow({"source", "plate", "analysis", "detectors"});

  if (top.has("source")) {
    const FieldReader r(top.at("source"), top.child("source"), degrees);
    r.allow({"phase", "t20", "t02", "phase_jitter", "pair_rate"});
    r.angle("phase", cfg.source.phase);
    r.number("t20", cfg.source.t20);
    r.number("t02", cfg.source.t02);
    r.angle("phase_jitter", cfg.source.phase_jitter);
    r.number("pair_rate", cfg.source.pair_rate);
  }
  if (top.has("plate")) {
    const FieldReader r(top.at("plate"), top.child("plate"), degrees);
    r.allow({"retardance", "angle"});
    if (r.has("retardance")) {
      const Json& v = r.at("retardance");
      const std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s == "half" || s == "hwp") {
        cfg.plate.retardance = kPi;
      } else if (s == "quarter" || s == "qwp") {
        cfg.plate.retardance = kPi / 2;
      } else {
        r.angle("retardance", cfg.plate.retardance);
      }
    }
    r.angle("angle", cfg.plate.angle);
  }
  if (top.has("analysis")) {
    cfg.analysis = parse_analysis(top, top.at("analysis"));
  }
  if (top.has("detectors")) {
    const FieldReader r(top.at("detectors"), top.child("detectors"), degrees);
    r.allow({"eta1", "eta2", "accidental_rate"});
    r.number("eta1", cfg.eta1);
    r.number("eta2", cfg.eta2);
    r.number("accidental_rate", cfg.accidental_rate);
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    parse_error(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
  return Json{
      {"source",
       {{"phase", cfg.source.phase},
        {"t20", cfg.source.t20},
        {"t02", cfg.source.t02},
        {"phase_jitter", cfg.source.phase_jitter},
        {"pair_rate", cfg.source.pair_rate}}},
      {"plate",
       {{"retardance", cfg.plate.retardance}, {"angle", cfg.plate.angle}}},
      {"analysis", std::string(to_string(cfg.analysis))},
      {"detectors",
       {{"eta1", cfg.eta1},
        {"eta2", cfg.eta2},
        {"accidental_rate", cfg.accidental_rate}}},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path, bool degrees) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open config file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Byte offset to line/column.
    const std::size_t offset = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    parse_error(path.string() + ":" + std::to_string(line) + ":" +
                std::to_string(column) + ": malformed JSON");
  }
  try {
    return config_from_json(doc, degrees);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

namespace {

SweepParameter parse_parameter(std::string_view s) {
  if (s == "phi") return SweepParameter::kPhi;
  if (s == "chi") return SweepParameter::kChi;
  parse_error("unknown sweep parameter '" + std::string(s) + "'");
}

void write_preamble(std::ostream& out, const Json& meta) {
  out << kCsvMagic << '\n' << "# meta: " << meta.dump() << '\n';
}

/// Reads magic and meta lines, returns the meta object.
Json read_preamble(std::istream& in, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvMagic) {
    parse_error("line 1: missing '" + std::string(kCsvMagic) + "' header");
  }
  line_no = 1;
  Json meta = Json::object();
  while (in.peek() == '#') {
    std::getline(in, line);
    ++line_no;
    constexpr std::string_view kMeta = "# meta: ";
    if (line.starts_with(kMeta)) {
      try {
        meta = Json::parse(line.substr(kMeta.size()));
      } catch (const Json::parse_error&) {
        parse_error("line " + std::to_string(line_no) + ": bad meta JSON");
      }
    }
  }
  return meta;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void expect_header(std::istream& in, std::size_t& line_no,
                   std::string_view header) {
  std::string line;
  ++line_no;
  if (!std::getline(in, line) || trim(line) != header) {
    parse_error("line " + std::to_string(line_no) + ": expected column header '" +
                std::string(header) + "'");
  }
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
  write_preamble(out, Json{{"kind", "sweep"},
                           {"parameter", std::string(to_string(table.parameter))},
                           {"config", to_json(table.config)}});
  out << "param,value,rate\n";
  const std::string name(to_string(table.parameter));
  for (const SweepPoint& p : table.points) {
    out << name << ',' << format_double(p.value) << ',' << format_double(p.rate)
        << '\n';
  }
}

SweepTable read_sweep_csv(std::istream& in) {
  std::size_t line_no = 0;
  const Json meta = read_preamble(in, line_no);
  SweepTable table;
  if (meta.contains("config")) table.config = config_from_json(meta.at("config"));
  if (meta.contains("parameter")) {
    table.parameter = parse_parameter(meta.at("parameter").get<std::string>());
  }
  expect_header(in, line_no, "param,value,rate");
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    SweepPoint p;
    if (cells.size() != 3 || !parse_number(cells[1], p.value) ||
        !parse_number(cells[2], p.rate)) {
      parse_error("line " + std::to_string(line_no) + ": malformed sweep row");
    }
    const SweepParameter param = parse_parameter(cells[0]);
    if (first && !meta.contains("parameter")) table.parameter = param;
    first = false;
    table.points.push_back(p);
  }
  return table;
}

void write_counts_csv(std::ostream& out, const CountRun& run) {
  write_preamble(out, Json{{"kind", "counts"},
                           {"seed", run.seed},
                           {"duration", run.duration},
                           {"bin", run.bin},
                           {"config", to_json(run.config)}});
  out << "t_start,coincidences\n";
  for (const CountRecord& r : run.records) {
    out << format_double(r.t_start) << ',' << r.coincidences << '\n';
  }
}

CountRun read_counts_csv(std::istream& in) {
  std::size_t line_no = 0;
  const Json meta = read_preamble(in, line_no);
  CountRun run;
  if (meta.contains("config")) run.config = config_from_json(meta.at("config"));
  if (meta.contains("seed")) run.seed = meta.at("seed").get<std::uint64_t>();
  if (meta.contains("duration")) run.duration = meta.at("duration").get<double>();
  if (meta.contains("bin")) run.bin = meta.at("bin").get<double>();
  expect_header(in, line_no, "t_start,coincidences");
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    CountRecord r;
    if (cells.size() != 2 || !parse_number(cells[0], r.t_start) ||
        !parse_uint(cells[1], r.coincidences)) {
      parse_error("line " + std::to_string(line_no) + ": malformed count row");
    }
    run.records.push_back(r);
  }
  return run;
}

Json to_json(const SweepTable& table) {
  Json rows = Json::array();
  for (const SweepPoint& p : table.points) {
    rows.push_back({{"value", p.value}, {"rate", p.rate}});
  }
  return Json{{"format", "triphot v1"},
              {"kind", "sweep"},
              {"parameter", std::string(to_string(table.parameter))},
              {"config", to_json(table.config)},
              {"points", std::move(rows)}};
}

Json to_json(const CountRun& run) {
  Json rows = Json::array();
  for (const CountRecord& r : run.records) {
    rows.push_back({{"t_start", r.t_start}, {"coincidences", r.coincidences}});
  }
  return Json{{"format", "triphot v1"},
              {"kind", "counts"},
              {"seed", run.seed},
              {"duration", run.duration},
              {"bin", run.bin},
              {"config", to_json(run.config)},
              {"records", std::move(rows)}};
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot move output into place at " + path.string());
  }
}

}  // namespace triphot::io

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

// triphot: command-line front end.
//
//   triphot verify [--grid N]
//   triphot sweep --param phi|chi [--config FILE] [overrides] [--out FILE]
//   triphot mc [--config FILE] [--seed S] [--duration T] [--bin B] [--out FILE]
//   triphot stokes STATE
//   triphot synth "minus->zero" [--plates hwp,qwp,free] [--phi VALUE|free]
//   triphot info
//
// Exit status: 0 ok, 1 verification failure, 2 usage or parse error, 3 I/O
// error.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "triphot/experiment.hpp"
#include "triphot/io.hpp"
#include "triphot/parallel.hpp"
#include "triphot/synthesis.hpp"
#include "triphot/verify.hpp"

namespace {

using namespace triphot;
using triphot::io::Json;
using triphot::io::format_double;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kIo ? kExitIo : kExitUsage;
}

void echo_config(const Json& resolved) {
  std::cout << "config: " << resolved.dump() << "\n";
}

// Complex number parsing for state specs: "1", "-0.5", "i", "2i", "1+2i",
// "0.3-0.1j".
std::optional<std::complex<double>> parse_complex(std::string text) {
  std::erase_if(text, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  if (!text.empty() && text.front() == '(' && text.back() == ')') {
    text = text.substr(1, text.size() - 2);
  }
  if (text.empty()) return std::nullopt;
  auto parse_real = [](std::string_view s, double& out) {
    if (s.starts_with('+')) s.remove_prefix(1);
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
  };
  auto parse_imag = [&](std::string_view s, double& out) {
    if (s.empty() || (s.back() != 'i' && s.back() != 'j')) return false;
    s.remove_suffix(1);
    if (s.empty() || s == "+") {
      out = 1.0;
      return true;
    }
    if (s == "-") {
      out = -1.0;
      return true;
    }
    return parse_real(s, out);
  };
  double re = 0.0, im = 0.0;
  if (parse_real(text, re)) return std::complex<double>(re, 0.0);
  if (parse_imag(text, im)) return std::complex<double>(0.0, im);
  // Split at the last sign that is not part of an exponent.
  for (std::size_t k = text.size() - 1; k > 0; --k) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' &&
        text[k - 1] != 'E') {
      if (parse_real(std::string_view(text).substr(0, k), re) &&
          parse_imag(std::string_view(text).substr(k), im)) {
        return std::complex<double>(re, im);
      }
      break;
    }
  }
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

/// Trit label, Fock occupation "2,0" / "1,1" / "0,2", or three complex
/// amplitudes "c1,c2,c3".
State parse_state(const std::string& spec) {
  if (auto t = parse_trit(spec)) return trit_basis(*t);
  const std::vector<std::string> parts = split(spec, ',');
  if (parts.size() == 2) {
    int nx = -1, ny = -1;
    auto [p1, e1] = std::from_chars(parts[0].data(), parts[0].data() + parts[0].size(), nx);
    auto [p2, e2] = std::from_chars(parts[1].data(), parts[1].data() + parts[1].size(), ny);
    if (e1 == std::errc() && e2 == std::errc() && nx >= 0 && ny >= 0 && nx + ny == 2 &&
        p1 == parts[0].data() + parts[0].size() && p2 == parts[1].data() + parts[1].size()) {
      return fock_basis(2 - nx);
    }
  }
  if (parts.size() == 3) {
    Vector3cd v;
    for (int k = 0; k < 3; ++k) {
      const auto c = parse_complex(parts[static_cast<std::size_t>(k)]);
      if (!c) {
        throw Error(ErrorCode::kParse, "cannot parse amplitude '" +
                                           parts[static_cast<std::size_t>(k)] +
                                           "' in state '" + spec + "'");
      }
      v(k) = *c;
    }
    return make_state(v);
  }
  throw Error(ErrorCode::kParse,
              "cannot parse state '" + spec +
                  "' (expected plus|minus|zero, a Fock pair such as 2,0, or "
                  "three amplitudes c1,c2,c3)");
}

Json complex_json(std::complex<double> c) { return Json::array({c.real(), c.imag()}); }

Json state_json(const State& s) {
  return Json::array({complex_json(s.c1()), complex_json(s.c2()), complex_json(s.c3())});
}

// Flags shared by sweep and mc that override config file fields.
struct Overrides {
  std::string config_path;
  bool degrees = false;
  std::optional<std::string> phi, chi, plate, analysis, jitter;
  std::optional<double> t20, t02, pair_rate, eta1, eta2, accidental_rate;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Experiment config (JSON)");
    cmd->add_flag("--deg", degrees, "Read plain-number angles in degrees");
    cmd->add_option("--phi", phi, "Source phase");
    cmd->add_option("--chi", chi, "Plate angle");
    cmd->add_option("--plate", plate, "Plate retardance: hwp, qwp or an angle");
    cmd->add_option("--analysis", analysis, "none, x or y")
        ->check(CLI::IsMember({"none", "x", "y"}));
    cmd->add_option("--jitter", jitter, "Phase jitter sigma");
    cmd->add_option("--t20", t20, "Amplitude factor of the |2,0> arm");
    cmd->add_option("--t02", t02, "Amplitude factor of the |0,2> arm");
    cmd->add_option("--pair-rate", pair_rate, "Pair rate [1/s]");
    cmd->add_option("--eta1", eta1, "Detector 1 efficiency");
    cmd->add_option("--eta2", eta2, "Detector 2 efficiency");
    cmd->add_option("--accidental-rate", accidental_rate, "Accidental rate [1/s]");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg =
        config_path.empty() ? ExperimentConfig{} : io::load_config(config_path, degrees);
    if (phi) cfg.source.phase = io::parse_angle(*phi, degrees);
    if (chi) cfg.plate.angle = io::parse_angle(*chi, degrees);
    if (plate) {
      if (*plate == "hwp" || *plate == "half") {
        cfg.plate.retardance = kPi;
      } else if (*plate == "qwp" || *plate == "quarter") {
        cfg.plate.retardance = kPi / 2;
      } else {
        cfg.plate.retardance = io::parse_angle(*plate, degrees);
      }
    }
    if (analysis) {
      cfg.analysis = *analysis == "x"   ? DetectionMode::kAnalysisX
                     : *analysis == "y" ? DetectionMode::kAnalysisY
                                        : DetectionMode::kDirectXY;
    }
    if (jitter) cfg.source.phase_jitter = io::parse_angle(*jitter, degrees);
    if (t20) cfg.source.t20 = *t20;
    if (t02) cfg.source.t02 = *t02;
    if (pair_rate) cfg.source.pair_rate = *pair_rate;
    if (eta1) cfg.eta1 = *eta1;
    if (eta2) cfg.eta2 = *eta2;
    if (accidental_rate) cfg.accidental_rate = *accidental_rate;
    cfg.validate();
    return cfg;
  }
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    io::write_file_atomic(out_path, content);
  }
}

int run_verify(int grid, int trials, const std::string& convention_name) {
  VerifyOptions options;
  options.grid = grid;
  options.random_trials = trials;
  options.convention = convention_name == "retarded"
                           ? RetarderConvention::kAxisRetarded
                           : RetarderConvention::kAxisAdvanced;
  echo_config({{"grid", grid},
               {"trials", trials},
               {"seed", options.seed},
               {"retarder_convention", convention_name}});
  const auto checks = run_verification(options);
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name
              << " max_residual=" << format_double(c.max_residual)
              << " tol=" << format_double(c.tolerance) << "\n";
    if (!c.passed) {
      ok = false;
      std::cerr << "verification failed: " << c.name << "\n";
    }
  }
  return ok ? kExitOk : kExitVerify;
}

int run_sweep(const Overrides& ov, const std::string& param,
              std::optional<std::string> from, std::optional<std::string> to,
              int steps, const std::string& out, const std::string& format) {
  const ExperimentConfig cfg = ov.resolve();
  const SweepParameter p = param == "chi" ? SweepParameter::kChi : SweepParameter::kPhi;
  const double lo = from ? io::parse_angle(*from, ov.degrees) : 0.0;
  const double hi = to ? io::parse_angle(*to, ov.degrees)
                       : (p == SweepParameter::kPhi ? 2 * kPi : kPi);
  const SweepTable table = sweep(cfg, p, lo, hi, steps);

  std::string content;
  if (format == "json") {
    content = io::to_json(table).dump(2) + "\n";
  } else {
    std::ostringstream buf;
    io::write_sweep_csv(buf, table);
    content = buf.str();
  }
  const bool to_stdout = out.empty() || out == "-";
  if (!to_stdout) {
    echo_config({{"experiment", io::to_json(cfg)},
                 {"parameter", param},
                 {"from", lo},
                 {"to", hi},
                 {"steps", steps}});
  }
  emit(out, content);
  if (!to_stdout) {
    std::cout << "wrote " << table.points.size() << " rows to " << out << "\n";
    try {
      std::cout << "visibility: " << format_double(visibility(table)) << "\n";
    } catch (const Error&) {
      std::cout << "visibility: undefined\n";
    }
  }
  return kExitOk;
}

int run_mc(const Overrides& ov, std::uint64_t seed, double duration, double bin,
           const std::string& out, const std::string& format) {
  io::CountRun run;
  run.config = ov.resolve();
  run.seed = seed;
  run.duration = duration;
  run.bin = bin;
  run.records = simulate_counts(run.config, seed, duration, bin);

  std::string content;
  if (format == "json") {
    content = io::to_json(run).dump(2) + "\n";
  } else {
    std::ostringstream buf;
    io::write_counts_csv(buf, run);
    content = buf.str();
  }
  const bool to_stdout = out.empty() || out == "-";
  if (!to_stdout) {
    echo_config({{"experiment", io::to_json(run.config)},
                 {"seed", seed},
                 {"duration", duration},
                 {"bin", bin}});
  }
  emit(out, content);
  if (!to_stdout) {
    double total = 0.0;
    for (const auto& r : run.records) total += static_cast<double>(r.coincidences);
    std::cout << "wrote " << run.records.size() << " bins to " << out << "\n";
    std::cout << "mean rate: " << format_double(total / duration) << " /s\n";
    std::cout << "predicted rate: " << format_double(predict_rate(run.config)) << " /s\n";
  }
  return kExitOk;
}

int run_stokes(const std::string& spec) {
  const State s = parse_state(spec);
  const auto st = stokes(s);
  const auto g = correlators(s);
  echo_config({{"state", spec}, {"normalized", state_json(s)}});
  std::cout << "stokes: s0=" << format_double(st.s0) << " s1=" << format_double(st.s1)
            << " s2=" << format_double(st.s2) << " s3=" << format_double(st.s3) << "\n";
  std::cout << "P: " << format_double(degree_of_polarization(s)) << "\n";
  std::cout << "correlators: gxy=" << format_double(g.gxy)
            << " gxx=" << format_double(g.gxx) << " gyy=" << format_double(g.gyy)
            << "\n";
  return kExitOk;
}

struct SynthArgs {
  std::string problem;
  std::string plates = "hwp";
  int budget = 1;
  std::optional<std::string> phi;
  int grid = 32;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  bool degrees = false;
};

std::pair<std::string, std::string> split_arrow(const std::string& s) {
  for (const std::string arrow : {"->", "→", "=>", ":"}) {
    const auto pos = s.find(arrow);
    if (pos != std::string::npos) {
      return {s.substr(0, pos), s.substr(pos + arrow.size())};
    }
  }
  throw Error(ErrorCode::kParse,
              "cannot parse transition '" + s + "' (expected e.g. minus->zero)");
}

void print_result(const std::string& label, const SynthesisProblem& p,
                  const SynthesisResult& r) {
  const auto report = reachability_report(p, r);
  std::cout << label << ":\n";
  for (std::size_t k = 0; k < r.plates.size(); ++k) {
    const Plate& plate = r.plates[k];
    std::string kind = "free";
    if (plate.retardance == kPi) kind = "hwp";
    if (plate.retardance == kPi / 2) kind = "qwp";
    std::cout << "  plate " << k + 1 << ": " << kind
              << " retardance=" << format_double(plate.retardance)
              << " angle=" << format_double(plate.angle) << "\n";
  }
  if (r.source_phase) {
    std::cout << "  source phase: " << format_double(*r.source_phase) << "\n";
  }
  std::cout << "  fidelity: " << format_double(report.fidelity) << "\n";
  std::cout << "  status: " << (report.reachable ? "reachable" : "approximate") << "\n";
  std::cout << "  evaluations: " << r.evaluations << "\n";
}

int run_synth(const SynthArgs& a) {
  const auto [lhs, rhs] = split_arrow(a.problem);
  SynthesisProblem p;
  p.input = parse_state(lhs);
  p.target = parse_state(rhs);
  p.budget = a.budget;
  p.allowed.clear();
  for (const std::string& kind : split(a.plates, ',')) {
    if (kind == "hwp" || kind == "half") {
      p.allowed.push_back(Retardance::kHalf);
    } else if (kind == "qwp" || kind == "quarter") {
      p.allowed.push_back(Retardance::kQuarter);
    } else if (kind == "free") {
      p.allowed.push_back(Retardance::kFree);
    } else {
      throw Error(ErrorCode::kParse, "unknown plate type '" + kind + "'");
    }
  }
  p.validate();

  const bool free_phase = a.phi && *a.phi == "free";
  if (a.phi && !free_phase) {
    // The source only prepares Psi+ (phi = 0) and Psi- (phi = pi).
    const double phi = io::parse_angle(*a.phi, a.degrees);
    SourceSpec src;
    src.phase = phi;
    const State prepared = source_state(src);
    if (!equal_up_to_phase(prepared, p.input, 1e-9)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--phi " + *a.phi + " prepares a different input state than '" +
                      lhs + "'");
    }
  }

  SynthesisOptions options;
  options.grid_density = a.grid;
  options.refine_tolerance = a.tol;
  options.seed = a.seed;

  Json echo = {{"input", state_json(p.input)},
               {"target", state_json(p.target)},
               {"plates", a.plates},
               {"budget", a.budget},
               {"phi", a.phi ? *a.phi : "fixed"},
               {"grid", a.grid},
               {"tol", a.tol},
               {"seed", a.seed}};
  echo_config(echo);

  if (free_phase) {
    p.optimize_source_phase = true;
    print_result("result (source phase free)", p, synthesize(p, options));
    return kExitOk;
  }
  print_result("result", p, synthesize(p, options));
  if (!a.phi) {
    SynthesisProblem q = p;
    q.optimize_source_phase = true;
    print_result("result (source phase free)", q, synthesize(q, options));
  }
  return kExitOk;
}

int run_info() {
  const Json info = {
      {"name", "triphot"},
      {"retarder_convention", "axis at chi advanced by delta/2"},
      {"basis", "|2,0>, |1,1>, |0,2>"},
      {"threads", worker_count()},
      {"default_experiment", io::to_json(ExperimentConfig{})},
      {"csv_header", std::string(io::kCsvMagic)},
  };
  echo_config(info);
  std::cout << "trits: plus=(|2,0>+|0,2>)/sqrt2 minus=(|2,0>-|0,2>)/sqrt2 zero=|1,1>\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biphoton polarization qutrit simulator"};
  app.require_subcommand(1);

  int grid = 101;
  int trials = 1000;
  std::string convention = "advanced";
  auto* verify_cmd = app.add_subcommand("verify", "Check closed forms and invariants");
  verify_cmd->add_option("--grid", grid, "Points per grid axis")->check(CLI::Range(2, 100000));
  verify_cmd->add_option("--trials", trials, "Random trials per property")
      ->check(CLI::Range(1, 100000000));
  verify_cmd->add_option("--retarder-convention", convention, "advanced or retarded")
      ->check(CLI::IsMember({"advanced", "retarded"}));

  Overrides sweep_ov;
  std::string sweep_param;
  std::optional<std::string> sweep_from, sweep_to;
  int steps = 101;
  std::string sweep_out, sweep_format = "csv";
  auto* sweep_cmd = app.add_subcommand("sweep", "Predicted rate over phi or chi");
  sweep_ov.attach(sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "phi or chi")
      ->required()
      ->check(CLI::IsMember({"phi", "chi"}));
  sweep_cmd->add_option("--from", sweep_from, "Start of range");
  sweep_cmd->add_option("--to", sweep_to, "End of range");
  sweep_cmd->add_option("--steps", steps, "Grid points")->check(CLI::Range(2, 100000000));
  sweep_cmd->add_option("--out", sweep_out, "Output file (default stdout)");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  Overrides mc_ov;
  std::uint64_t mc_seed = 0;
  double duration = 100.0, bin = 1.0;
  std::string mc_out, mc_format = "csv";
  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo coincidence counts");
  mc_ov.attach(mc_cmd);
  mc_cmd->add_option("--seed", mc_seed, "Random seed");
  mc_cmd->add_option("--duration", duration, "Simulated time [s]");
  mc_cmd->add_option("--bin", bin, "Bin width [s]");
  mc_cmd->add_option("--out", mc_out, "Output file (default stdout)");
  mc_cmd->add_option("--format", mc_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string state_spec;
  auto* stokes_cmd = app.add_subcommand("stokes", "Stokes vector, P and correlators");
  stokes_cmd->add_option("state", state_spec, "plus|minus|zero, 2,0 or c1,c2,c3")
      ->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Find plates for a transition");
  synth_cmd->add_option("problem", synth.problem, "e.g. minus->zero")->required();
  synth_cmd->add_option("--plates", synth.plates, "Comma list of hwp, qwp, free");
  synth_cmd->add_option("--budget", synth.budget, "Maximum number of plates")
      ->check(CLI::Range(1, kMaxPlateBudget));
  synth_cmd->add_option("--phi", synth.phi, "Source phase value, or 'free'");
  synth_cmd->add_option("--grid", synth.grid, "Grid points per angle")
      ->check(CLI::Range(8, 100000));
  synth_cmd->add_option("--tol", synth.tol, "Refinement tolerance [rad]")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_flag("--deg", synth.degrees, "Read plain-number angles in degrees");

  auto* info_cmd = app.add_subcommand("info", "Conventions and defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return run_verify(grid, trials, convention);
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_ov, sweep_param, sweep_from, sweep_to, steps, sweep_out,
                       sweep_format);
    }
    if (mc_cmd->parsed()) {
      return run_mc(mc_ov, mc_seed, duration, bin, mc_out, mc_format);
    }
    if (stokes_cmd->parsed()) return run_stokes(state_spec);
    if (synth_cmd->parsed()) return run_synth(synth);
    if (info_cmd->parsed()) return run_info();
  } catch (const Error& e) {
    std::cerr << "triphot: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "triphot: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

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

// Acceptance run: one PASS/FAIL line per numbered criterion. Exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "triphot/experiment.hpp"
#include "triphot/reference.hpp"
#include "triphot/synthesis.hpp"

using namespace triphot;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) passed = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [FAILED]");
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string num_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig ideal(Plate plate, double phi) {
  ExperimentConfig cfg;
  cfg.plate = plate;
  cfg.source.phase = phi;
  cfg.source.pair_rate = 1.0;
  cfg.accidental_rate = 0.0;
  return cfg;
}

double lattice_distance(double x, double offset, double spacing) {
  return std::abs(std::remainder(x - offset, spacing));
}

void criterion_1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double chi = kPi * i / 100;
    for (int k = 0; k <= 100; ++k) {
      const double phi = 2 * kPi * k / 100;
      const auto pops = state_after_plate(ideal(Plate::half_wave(chi), phi)).populations();
      const auto law = hwp_law(chi, phi);
      worst = std::max({worst, std::abs(pops(0) - law.c1sq), std::abs(pops(1) - law.c2sq),
                        std::abs(pops(2) - law.c3sq)});
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(worst < 1e-12, "half-wave 101x101 max residual " + num(worst) + " < 1e-12");
  o.require(elapsed < 1.0, "runtime " + num(elapsed) + " s < 1 s");
}

void criterion_2(Outcome& o) {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double chi = kPi * i / 100;
    for (int k = 0; k <= 100; ++k) {
      const double phi = 2 * kPi * k / 100;
      const double c2sq =
          std::norm(state_after_plate(ideal(Plate::quarter_wave(chi), phi)).c2());
      worst = std::max(worst, std::abs(c2sq - qwp_law(chi, phi)));
    }
  }
  o.require(worst < 1e-12, "quarter-wave 101x101 max residual " + num(worst) + " < 1e-12");

  const double h = std::sqrt(0.5);
  const double derived = 0.5 * (h + h * h) * (h + h * h);
  const State pinned_state = apply(lift(retarder(kPi / 2, kPi / 8, kRetarderConvention)),
                                   source_state(SourceSpec{.phase = kPi / 2}));
  const double pinned = std::norm(pinned_state.c2());
  o.require(std::abs(pinned - derived) < 1e-12,
            "pinning point chi=pi/8 phi=pi/2 gives " + num_full(pinned) + " (expected " +
                num_full(derived) + ")");
  const State flipped_state =
      apply(lift(retarder(kPi / 2, kPi / 8, RetarderConvention::kAxisRetarded)),
            source_state(SourceSpec{.phase = kPi / 2}));
  o.require(std::abs(std::norm(flipped_state.c2()) - derived) > 0.1,
            "flipped convention misses the pinning point");
}

void criterion_3(Outcome& o) {
  auto check = [&](const std::string& name, const Plate& plate, const State& in,
                   const State& target) {
    const double f = fidelity(target, apply(lift(retarder(plate)), in));
    o.require(std::abs(1.0 - f) < 1e-12, name + " F=" + num_full(f));
  };
  const State plus = trit_basis(Trit::kPlus);
  const State minus = trit_basis(Trit::kMinus);
  const State zero = trit_basis(Trit::kZero);
  check("HWP(pi/8) phi=pi: minus->zero", Plate::half_wave(kPi / 8),
        source_state(SourceSpec{.phase = kPi}), zero);
  check("QWP(pi/4) phi=0: plus->zero", Plate::quarter_wave(kPi / 4),
        source_state(SourceSpec{.phase = 0}), zero);
  check("HWP(0): minus->plus", Plate::half_wave(0), minus, plus);
  check("QWP(pi/4): minus->minus", Plate::quarter_wave(kPi / 4), minus, minus);
  double worst = 0.0;
  for (int i = 0; i <= 360; ++i) {
    const double f = fidelity(plus, apply(lift(half_wave(kPi * i / 360)),
                                          source_state(SourceSpec{.phase = 0})));
    worst = std::max(worst, std::abs(1.0 - f));
  }
  o.require(worst < 1e-12, "HWP(any chi) phi=0: plus->plus max |1-F|=" + num(worst));
}

void criterion_4(Outcome& o) {
  std::mt19937_64 rng(4);
  double oracle = 0.0, hom = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Matrix2cd j1 = reference::random_unitary2(rng);
    const Matrix2cd j2 = reference::random_unitary2(rng);
    oracle = std::max(oracle, (lift(Jones2(j1)).matrix() -
                               reference::symmetric_restriction(j1))
                                  .cwiseAbs()
                                  .maxCoeff());
    hom = std::max(hom, (lift(Jones2(j2 * j1)).matrix() -
                         (lift(Jones2(j2)) * lift(Jones2(j1))).matrix())
                            .cwiseAbs()
                            .maxCoeff());
  }
  o.require(oracle < 1e-12, "tensor oracle max residual " + num(oracle));
  o.require(hom < 1e-12, "homomorphism max residual " + num(hom));
}

void criterion_5(Outcome& o) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> count(1, 5);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const State s = reference::random_state(rng);
    std::vector<Plate> plates(static_cast<std::size_t>(count(rng)));
    for (Plate& p : plates) p = reference::random_plate(rng);
    const State out = apply(plate_sequence_operator<double>(plates), s);
    worst = std::max(worst, std::abs(degree_of_polarization(out) - degree_of_polarization(s)));
  }
  o.require(worst < 1e-10, "plate sequences max |dP| " + num(worst) + " < 1e-10");

  Su3Params<double> theta = Su3Params<double>::Zero();
  theta(2) = kPi / 2;
  const Operator3 g = su3_exp(theta);
  const State s = make_state<double>(1, 1, 1);
  const double dp = std::abs(degree_of_polarization(apply(g, s)) - degree_of_polarization(s));
  o.require(std::abs(g.determinant() - 1.0) < 1e-12 && !is_in_plate_subgroup(g),
            "witness exp(i pi/2 lambda3) is in SU(3) and outside the plate image");
  o.require(dp > 0.1, "witness changes P by " + num(dp) + " > 0.1");
}

void criterion_6(Outcome& o) {
  const double a = degree_of_polarization(fock_basis(0));
  const double b = degree_of_polarization(fock_basis(2));
  const double p = degree_of_polarization(trit_basis(Trit::kPlus));
  const double m = degree_of_polarization(trit_basis(Trit::kMinus));
  const double z = degree_of_polarization(trit_basis(Trit::kZero));
  o.require(std::abs(a - 1) < 1e-12 && std::abs(b - 1) < 1e-12,
            "P(|2,0>)=" + num_full(a) + " P(|0,2>)=" + num_full(b));
  o.require(std::abs(p) < 1e-12 && std::abs(m) < 1e-12 && std::abs(z) < 1e-12,
            "P(plus)=" + num(p) + " P(minus)=" + num(m) + " P(zero)=" + num(z));
}

void criterion_7(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> eta(0.0, 1.0);
  const Operator3 pol = lift(polarizer(PolarizerAxis::kX));
  const Operator3 hwp = lift(half_wave(kPi / 8));
  double sum_rule = 0.0, block = 0.0, closed = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const State s = reference::random_state(rng);
    const auto g = correlators(s);
    sum_rule = std::max(sum_rule, std::abs(g.gxx / 2 + g.gxy + g.gyy / 2 - 1.0));
    const double e1 = eta(rng), e2 = eta(rng);
    const double p = coincidence_probability(s, DetectionMode::kAnalysisX, e1, e2);
    const auto passed = apply_conditioned(pol, s);
    double chain = 0.0;
    if (passed.state) {
      chain = passed.survival * std::norm(apply(hwp, *passed.state).c2()) * e1 * e2;
    }
    block = std::max(block, std::abs(p - chain));
    closed = std::max(closed, std::abs(p - std::norm(s.c1()) / 2 * e1 * e2));
  }
  o.require(sum_rule < 1e-12, "gxx/2+gxy+gyy/2=1 max residual " + num(sum_rule));
  o.require(block < 1e-12, "analysis-x vs polarizer/plate chain " + num(block));
  o.require(closed < 1e-12, "analysis-x vs |c1|^2/2 eta1 eta2 " + num(closed));
}

void criterion_8(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const int steps = 721;
  const double step = kPi / (steps - 1);
  const double pq =
      fundamental_period(sweep(ideal(Plate::quarter_wave(0), 0), SweepParameter::kChi, 0, kPi, steps));
  const double ph =
      fundamental_period(sweep(ideal(Plate::half_wave(0), kPi), SweepParameter::kChi, 0, kPi, steps));
  const double elapsed = seconds_since(t0);
  o.require(std::abs(pq - kPi / 2) <= step, "QWP(phi=0) chi-period " + num_full(pq) + " vs pi/2");
  o.require(std::abs(ph - kPi / 4) <= step, "HWP(phi=pi) chi-period " + num_full(ph) + " vs pi/4");
  o.require(elapsed < 1.0, "runtime " + num(elapsed) + " s < 1 s");
}

void criterion_9(Outcome& o) {
  const double r = calibrate_loss_for_visibility(0.9);
  ExperimentConfig cfg = ideal(Plate::half_wave(kPi / 8), 0);
  cfg.source.t20 = 1.0;
  cfg.source.t02 = r;
  const double v = visibility(sweep(cfg, SweepParameter::kPhi, 0, 2 * kPi, 201));
  o.require(std::abs(r - 0.6268) < 1e-4, "r=" + num_full(r) + " ~ 0.6268");
  o.require(std::abs(v - 0.9) < 1e-3, "phi-sweep visibility " + num_full(v));
}

void criterion_10(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.plate = Plate::half_wave(kPi / 8);
  cfg.source.phase = kPi;
  cfg.source.pair_rate = 300;
  cfg.eta1 = cfg.eta2 = 0.1;
  cfg.accidental_rate = 0.1;
  const double duration = 1e4;
  const auto records = simulate_counts(cfg, 2026, duration, 1.0);
  double total = 0.0;
  for (const auto& r : records) total += static_cast<double>(r.coincidences);
  const double rate = total / duration;
  const double expected = predict_rate(cfg);
  const double se = std::sqrt(expected / duration);
  const double elapsed = seconds_since(t0);
  o.require(std::abs(rate - expected) < 4 * se,
            "mean " + num_full(rate) + " /s vs predicted " + num_full(expected) +
                " /s, " + num(std::abs(rate - expected) / se) + " SE");
  o.require(elapsed < 10.0, "runtime " + num(elapsed) + " s < 10 s");
}

void criterion_11(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  auto solve = [&](const std::string& name, Trit in, Trit out, Retardance kind,
                   double offset, double spacing) {
    SynthesisProblem p;
    p.input = trit_basis(in);
    p.target = trit_basis(out);
    p.allowed = {kind};
    const auto r = synthesize(p);
    const double chi = r.plates.empty() ? std::nan("") : r.plates[0].angle;
    const bool ok = r.fidelity > 1 - 1e-9 && lattice_distance(chi, offset, spacing) < 1e-4;
    o.require(ok, name + " chi=" + num_full(chi) + " F=" + num_full(r.fidelity));
  };
  solve("hwp minus->zero", Trit::kMinus, Trit::kZero, Retardance::kHalf, kPi / 8, kPi / 4);
  solve("qwp plus->zero", Trit::kPlus, Trit::kZero, Retardance::kQuarter, kPi / 4, kPi / 2);
  solve("hwp minus->plus", Trit::kMinus, Trit::kPlus, Retardance::kHalf, 0, kPi / 2);

  SynthesisProblem p;
  p.input = trit_basis(Trit::kPlus);
  p.target = trit_basis(Trit::kZero);
  p.allowed = {Retardance::kHalf};
  const auto report = reachability_report(p, synthesize(p));
  o.require(!report.reachable && std::abs(report.fidelity) < 1e-9,
            "hwp plus->zero approximate, max F=" + num(report.fidelity));
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30.0, "runtime " + num(elapsed) + " s < 30 s");
}

void criterion_12(Outcome& o) {
  const double lc = coherence_length(650e-9, 10e-9);
  o.require(std::abs(lc - 42.25e-6) < 1e-15, "coherence_length(650 nm, 10 nm)=" +
                                                 num_full(lc * 1e6) + " um");
  o.require(std::abs(lc - 40e-6) < 0.1 * 40e-6, "consistent with ~40 um");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"half-wave closed form", criterion_1},
      {"quarter-wave closed form and convention pin", criterion_2},
      {"trit-transition anchors", criterion_3},
      {"lift oracle", criterion_4},
      {"P invariance", criterion_5},
      {"Stokes anchors", criterion_6},
      {"correlator decomposition and analysis block", criterion_7},
      {"period doubling", criterion_8},
      {"visibility calibration", criterion_9},
      {"Monte Carlo consistency", criterion_10},
      {"synthesis recovery", criterion_11},
      {"coherence length", criterion_12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.passed) ++failures;
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.passed ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

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

// Model of the coincidence experiment: a two-arm type-I source whose outputs
// are joined on a polarizing beamsplitter (giving t20|2,0> + e^{i phi} t02|0,2>),
// one retardation plate, an optional polarizer + half-wave analysis block, and
// two detectors behind a PBS counting x/y coincidences.

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "triphot/observables.hpp"

namespace triphot {

struct SourceSpec {
  /// Interferometer phase phi between the |2,0> and |0,2> arms [rad].
  double phase = 0.0;
  /// Two-photon amplitude factors of the two arms.
  double t20 = 1.0;
  double t02 = 1.0;
  /// Standard deviation of Gaussian jitter on phi [rad].
  double phase_jitter = 0.0;
  /// Pair rate [1/s].
  double pair_rate = 300.0;
};

struct ExperimentConfig {
  SourceSpec source;
  Plate plate = Plate::half_wave(kPi / 8);
  DetectionMode analysis = DetectionMode::kDirectXY;
  double eta1 = 1.0;
  double eta2 = 1.0;
  /// Accidental coincidence rate [1/s].
  double accidental_rate = 0.1;

  /// Throws kInvalidArgument / kInvalidEfficiency on out-of-range fields.
  void validate() const;
};

enum class SweepParameter { kPhi, kChi };

std::string_view to_string(SweepParameter p);

struct SweepPoint {
  double value = 0.0;
  double rate = 0.0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepTable {
  SweepParameter parameter = SweepParameter::kPhi;
  std::vector<SweepPoint> points;
  ExperimentConfig config;
};

struct CountRecord {
  double t_start = 0.0;
  std::uint64_t coincidences = 0;

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

/// Normalized t20|2,0> + e^{i(phi + jitter)} t02|0,2>.
State source_state(const SourceSpec& src, double jitter_draw = 0.0);

struct Populations {
  double c1sq = 0.0;
  double c2sq = 0.0;
  double c3sq = 0.0;
};

/// Closed-form populations after a half-wave plate at chi acting on the
/// balanced source at phase phi: |c2|^2 = sin^2 4chi sin^2(phi/2) and
/// |c1|^2 = |c3|^2 = (1 - |c2|^2)/2.
Populations hwp_law(double chi, double phi);

/// Closed-form |c2|^2 after a quarter-wave plate at chi:
/// sin^2 2chi (cos phi/2 + cos 2chi sin phi/2)^2.
double qwp_law(double chi, double phi);

/// State after the plate for a given jitter draw.
State state_after_plate(const ExperimentConfig& cfg, double jitter_draw = 0.0);

/// Per-pair coincidence probability for a given jitter draw.
double pair_coincidence_probability(const ExperimentConfig& cfg,
                                    double jitter_draw = 0.0);

/// Expected coincidence rate R E[p] + R_acc, the expectation taken over the
/// Gaussian phase jitter. Since p depends on the total phase theta only as
/// A + Re(B e^{i theta}), the average damps the interference term by
/// exp(-sigma^2/2) exactly.
double predict_rate(const ExperimentConfig& cfg);

/// predict_rate with phi or chi replaced by `value`.
double predict_rate(const ExperimentConfig& cfg, SweepParameter parameter,
                    double value);

ExperimentConfig with_parameter(ExperimentConfig cfg, SweepParameter parameter,
                                double value);

/// Uniform, endpoint-inclusive grid of predicted rates. Requires steps >= 2
/// and from < to.
SweepTable sweep(const ExperimentConfig& cfg, SweepParameter parameter,
                 double from, double to, int steps);

/// Poisson pair emission per bin, per-pair jitter and coincidence draws, plus
/// Poisson accidentals. Bin k uses its own generator seeded from (seed, k),
/// so output is independent of the number of worker threads. A trailing
/// partial bin covers the remainder of `duration`.
std::vector<CountRecord> simulate_counts(const ExperimentConfig& cfg,
                                         std::uint64_t seed, double duration,
                                         double bin);

/// Fringe visibility (max - min)/(max + min) of a single-harmonic
/// least-squares fit with the given period.
double visibility(const SweepTable& table, double period);

/// As above with the period inferred: 2pi for phi sweeps, the
/// autocorrelation period for chi sweeps.
double visibility(const SweepTable& table);

/// Fundamental period of a uniformly sampled table from the first
/// autocorrelation peak after the first zero crossing.
double fundamental_period(const SweepTable& table);

/// Amplitude ratio r = t02/t20 <= 1 with 2r/(1 + r^2) = V.
double calibrate_loss_for_visibility(double target_visibility);

}  // namespace triphot

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

#include "triphot/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "triphot/parallel.hpp"

namespace triphot {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

double square(double x) { return x * x; }

}  // namespace

void ExperimentConfig::validate() const {
  if (!in_unit_interval(source.t20) || !in_unit_interval(source.t02)) {
    throw Error(ErrorCode::kInvalidArgument,
                "source transmissions t20, t02 must lie in [0, 1]");
  }
  if (source.t20 == 0.0 && source.t02 == 0.0) {
    throw Error(ErrorCode::kZeroState, "both source arms are blocked");
  }
  if (!(source.phase_jitter >= 0.0) || !std::isfinite(source.phase_jitter)) {
    throw Error(ErrorCode::kInvalidArgument, "phase jitter must be >= 0");
  }
  if (!(source.pair_rate >= 0.0) || !std::isfinite(source.pair_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "pair rate must be >= 0");
  }
  if (!std::isfinite(source.phase) || !std::isfinite(plate.angle) ||
      !std::isfinite(plate.retardance)) {
    throw Error(ErrorCode::kInvalidArgument, "angles must be finite");
  }
  if (!in_unit_interval(eta1) || !in_unit_interval(eta2)) {
    throw Error(ErrorCode::kInvalidEfficiency,
                "detector efficiencies must lie in [0, 1]");
  }
  if (!(accidental_rate >= 0.0) || !std::isfinite(accidental_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "accidental rate must be >= 0");
  }
}

std::string_view to_string(SweepParameter p) {
  return p == SweepParameter::kPhi ? "phi" : "chi";
}

State source_state(const SourceSpec& src, double jitter_draw) {
  if (src.t20 == 0.0 && src.t02 == 0.0) {
    throw Error(ErrorCode::kZeroState, "both source arms are blocked");
  }
  return make_state<double>(
      src.t20, 0.0, std::polar(src.t02, src.phase + jitter_draw));
}

Populations hwp_law(double chi, double phi) {
  const double c2sq = square(std::sin(4 * chi)) * square(std::sin(phi / 2));
  return {(1 - c2sq) / 2, c2sq, (1 - c2sq) / 2};
}

double qwp_law(double chi, double phi) {
  return square(std::sin(2 * chi)) *
         square(std::cos(phi / 2) + std::cos(2 * chi) * std::sin(phi / 2));
}

State state_after_plate(const ExperimentConfig& cfg, double jitter_draw) {
  return apply(lift(retarder(cfg.plate)), source_state(cfg.source, jitter_draw));
}

double pair_coincidence_probability(const ExperimentConfig& cfg,
                                    double jitter_draw) {
  return coincidence_probability(state_after_plate(cfg, jitter_draw),
                                 cfg.analysis, cfg.eta1, cfg.eta2);
}

double predict_rate(const ExperimentConfig& cfg) {
  cfg.validate();
  const double p_in = pair_coincidence_probability(cfg, 0.0);
  double p = p_in;
  if (cfg.source.phase_jitter > 0.0) {
    // p(theta) = A + Re(B e^{i theta}): average of theta and theta + pi is A.
    const double p_out = pair_coincidence_probability(cfg, kPi);
    const double mean = (p_in + p_out) / 2;
    const double damping = std::exp(-square(cfg.source.phase_jitter) / 2);
    p = mean + damping * (p_in - mean);
  }
  return cfg.source.pair_rate * p + cfg.accidental_rate;
}

ExperimentConfig with_parameter(ExperimentConfig cfg, SweepParameter parameter,
                                double value) {
  if (parameter == SweepParameter::kPhi) {
    cfg.source.phase = value;
  } else {
    cfg.plate.angle = value;
  }
  return cfg;
}

double predict_rate(const ExperimentConfig& cfg, SweepParameter parameter,
                    double value) {
  return predict_rate(with_parameter(cfg, parameter, value));
}

SweepTable sweep(const ExperimentConfig& cfg, SweepParameter parameter,
                 double from, double to, int steps) {
  if (steps < 2) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs at least 2 steps");
  }
  if (!(from < to)) {
    throw Error(ErrorCode::kOutOfRange, "sweep range must satisfy from < to");
  }
  cfg.validate();
  SweepTable table;
  table.parameter = parameter;
  table.config = cfg;
  table.points.resize(static_cast<std::size_t>(steps));
  const double step = (to - from) / (steps - 1);
  parallel_for(table.points.size(), [&](std::size_t i) {
    const double x = i + 1 == table.points.size() ? to : from + i * step;
    table.points[i] = {x, predict_rate(cfg, parameter, x)};
  });
  return table;
}

namespace {

std::mt19937_64 bin_generator(std::uint64_t seed, std::uint64_t bin_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(bin_index),
                    static_cast<std::uint32_t>(bin_index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::vector<CountRecord> simulate_counts(const ExperimentConfig& cfg,
                                         std::uint64_t seed, double duration,
                                         double bin) {
  if (!(duration > 0.0) || !(bin > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "duration and bin width must be positive");
  }
  cfg.validate();
  const auto n_bins =
      static_cast<std::size_t>(std::ceil(duration / bin - 1e-9));
  const Operator3 plate = lift(retarder(cfg.plate));
  const double sigma = cfg.source.phase_jitter;
  const double fixed_p =
      sigma > 0.0 ? 0.0 : pair_coincidence_probability(cfg, 0.0);

  std::vector<CountRecord> records(n_bins);
  parallel_for(n_bins, [&](std::size_t k) {
    const double t0 = k * bin;
    const double width = std::min(bin, duration - t0);
    auto rng = bin_generator(seed, k);

    std::poisson_distribution<std::uint64_t> pairs_dist(
        cfg.source.pair_rate * width);
    const std::uint64_t pairs =
        cfg.source.pair_rate > 0.0 ? pairs_dist(rng) : 0;

    std::uint64_t hits = 0;
    if (sigma > 0.0) {
      std::normal_distribution<double> jitter(0.0, sigma);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (std::uint64_t n = 0; n < pairs; ++n) {
        const State s = apply(plate, source_state(cfg.source, jitter(rng)));
        const double p =
            coincidence_probability(s, cfg.analysis, cfg.eta1, cfg.eta2);
        if (unit(rng) < p) ++hits;
      }
    } else if (pairs > 0) {
      // Same per-pair probability for every pair: Bernoulli thinning.
      std::binomial_distribution<std::uint64_t> thin(
          pairs, std::clamp(fixed_p, 0.0, 1.0));
      hits = thin(rng);
    }

    if (cfg.accidental_rate > 0.0) {
      std::poisson_distribution<std::uint64_t> acc(cfg.accidental_rate * width);
      hits += acc(rng);
    }
    records[k] = {t0, hits};
  });
  return records;
}

namespace {

void require_uniform(const SweepTable& table) {
  if (table.points.size() < 3) {
    throw Error(ErrorCode::kDegenerateTable, "table needs at least 3 points");
  }
}

}  // namespace

double visibility(const SweepTable& table, double period) {
  require_uniform(table);
  if (!(period > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "period must be positive");
  }
  const auto n = static_cast<Eigen::Index>(table.points.size());
  const double omega = 2 * kPi / period;
  Eigen::MatrixX3d design(n, 3);
  Eigen::VectorXd rates(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const SweepPoint& pt = table.points[static_cast<std::size_t>(i)];
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(omega * pt.value);
    design(i, 2) = std::sin(omega * pt.value);
    rates(i) = pt.rate;
  }
  const Eigen::Vector3d fit = design.colPivHouseholderQr().solve(rates);
  const double mean = fit(0);
  const double amplitude = std::hypot(fit(1), fit(2));
  // max + min of the fitted fringe is 2 * mean.
  if (std::abs(mean) < 1e-300) {
    throw Error(ErrorCode::kDegenerateTable,
                "fringe has max + min = 0, visibility undefined");
  }
  return amplitude / mean;
}

double fundamental_period(const SweepTable& table) {
  require_uniform(table);
  const std::size_t n = table.points.size();

  // Pearson correlation of the overlapping segments x[0, n-lag) and
  // x[lag, n).
  auto correlation = [&](std::size_t lag) {
    const std::size_t m = n - lag;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      ma += table.points[i].rate;
      mb += table.points[i + lag].rate;
    }
    ma /= static_cast<double>(m);
    mb /= static_cast<double>(m);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = table.points[i].rate - ma;
      const double b = table.points[i + lag].rate - mb;
      sab += a * b;
      saa += a * a;
      sbb += b * b;
    }
    const double denom = std::sqrt(saa * sbb);
    return denom > 1e-300 ? sab / denom : 0.0;
  };

  double spread = 0.0;
  for (const auto& pt : table.points) {
    spread = std::max(spread, std::abs(pt.rate - table.points.front().rate));
  }
  if (!(spread > 1e-300)) {
    throw Error(ErrorCode::kDegenerateTable, "constant table has no period");
  }
  const std::size_t max_lag = n - n / 4;
  std::vector<double> r(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) r[k] = correlation(k);

  std::size_t k = 1;
  while (k < max_lag && r[k] >= 0.0) ++k;
  for (; k < max_lag; ++k) {
    if (r[k] > 0.0 && r[k] >= r[k - 1] && r[k] >= r[k + 1]) {
      const double step = (table.points.back().value - table.points.front().value) /
                          static_cast<double>(n - 1);
      return static_cast<double>(k) * step;
    }
  }
  throw Error(ErrorCode::kDegenerateTable,
              "no full period sampled in the table");
}

double visibility(const SweepTable& table) {
  require_uniform(table);
  const auto [lo, hi] = std::minmax_element(
      table.points.begin(), table.points.end(),
      [](const SweepPoint& a, const SweepPoint& b) { return a.rate < b.rate; });
  if (hi->rate == lo->rate) {
    if (hi->rate == 0.0) {
      throw Error(ErrorCode::kDegenerateTable,
                  "fringe has max + min = 0, visibility undefined");
    }
    return 0.0;
  }
  const double period = table.parameter == SweepParameter::kPhi
                            ? 2 * kPi
                            : fundamental_period(table);
  return visibility(table, period);
}

double calibrate_loss_for_visibility(double target_visibility) {
  if (!(target_visibility > 0.0 && target_visibility <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "visibility must lie in (0, 1]");
  }
  const double v = target_visibility;
  // Smaller root of v r^2 - 2 r + v = 0.
  return (1.0 - std::sqrt((1.0 - v) * (1.0 + v))) / v;
}

}  // namespace triphot

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

#include "triphot/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "triphot/nelder_mead.hpp"
#include "triphot/parallel.hpp"

namespace triphot {

std::string_view to_string(Retardance r) {
  switch (r) {
    case Retardance::kHalf: return "hwp";
    case Retardance::kQuarter: return "qwp";
    case Retardance::kFree: return "free";
  }
  return "?";
}

void SynthesisProblem::validate() const {
  if (budget < 1 || budget > kMaxPlateBudget) {
    throw Error(ErrorCode::kOutOfRange,
                "plate budget must lie in [1, " +
                    std::to_string(kMaxPlateBudget) + "]");
  }
  if (allowed.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no plate types allowed");
  }
}

Operator3 source_phase_operator(double phi) {
  Vector3cd d(1.0, std::polar(1.0, phi / 2), std::polar(1.0, phi));
  return Operator3(d.asDiagonal());
}

Operator3 sequence_operator(std::span<const Plate> plates,
                            std::optional<double> source_phase) {
  Operator3 g = plate_sequence_operator<double>(plates);
  if (source_phase) g = g * source_phase_operator(*source_phase);
  return g;
}

double sequence_fidelity(const SynthesisProblem& p,
                         std::span<const Plate> plates,
                         std::optional<double> source_phase) {
  return fidelity(p.target,
                  apply(sequence_operator(plates, source_phase), p.input));
}

std::size_t parameter_count(const PlateLayout& layout, bool source_phase) {
  std::size_t n = layout.size() + (source_phase ? 1 : 0);
  for (Retardance r : layout) n += r == Retardance::kFree ? 1 : 0;
  return n;
}

PlateLayout default_layout(const SynthesisProblem& p) {
  p.validate();
  const auto budget = static_cast<std::size_t>(p.budget);
  if (std::find(p.allowed.begin(), p.allowed.end(), Retardance::kFree) !=
      p.allowed.end()) {
    return PlateLayout(budget, Retardance::kFree);
  }
  const Retardance first = p.allowed.front();
  if (std::any_of(p.allowed.begin(), p.allowed.end(),
                  [&](Retardance r) { return r != first; })) {
    throw Error(ErrorCode::kInvalidArgument,
                "mixed plate types need an explicit layout");
  }
  return PlateLayout(budget, first);
}

namespace {

struct Decoded {
  std::vector<Plate> plates;
  std::optional<double> phase;
};

Decoded decode(const PlateLayout& layout, bool source_phase,
               std::span<const double> params) {
  if (params.size() != parameter_count(layout, source_phase)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " +
                    std::to_string(parameter_count(layout, source_phase)) +
                    " parameters, got " + std::to_string(params.size()));
  }
  Decoded out;
  out.plates.reserve(layout.size());
  std::size_t k = 0;
  for (Retardance r : layout) {
    Plate plate;
    plate.angle = params[k++];
    switch (r) {
      case Retardance::kHalf: plate.retardance = kPi; break;
      case Retardance::kQuarter: plate.retardance = kPi / 2; break;
      case Retardance::kFree: plate.retardance = params[k++]; break;
    }
    out.plates.push_back(plate);
  }
  if (source_phase) out.phase = params[k];
  return out;
}

/// Period of each parameter slot, in layout order.
std::vector<double> parameter_periods(const PlateLayout& layout,
                                      bool source_phase) {
  std::vector<double> periods;
  for (Retardance r : layout) {
    periods.push_back(kPi);
    if (r == Retardance::kFree) periods.push_back(2 * kPi);
  }
  if (source_phase) periods.push_back(2 * kPi);
  return periods;
}

double wrap(double x, double period) { return internal::wrap(x, period); }

struct Candidate {
  std::size_t plates = 0;
  std::vector<double> params;  // canonical
  PlateLayout layout;
  double fidelity = 0.0;
};

/// Strict weak order: better fidelity, then fewer plates, then smaller
/// canonical parameters.
bool better(const Candidate& a, const Candidate& b) {
  constexpr double kTie = 1e-12;
  if (a.fidelity > b.fidelity + kTie) return true;
  if (b.fidelity > a.fidelity + kTie) return false;
  if (a.plates != b.plates) return a.plates < b.plates;
  return std::lexicographical_compare(a.params.begin(), a.params.end(),
                                      b.params.begin(), b.params.end());
}

std::vector<PlateLayout> admissible_layouts(const SynthesisProblem& p) {
  std::vector<PlateLayout> layouts;
  const bool any_free =
      std::find(p.allowed.begin(), p.allowed.end(), Retardance::kFree) !=
      p.allowed.end();
  std::vector<Retardance> kinds;
  if (any_free) {
    kinds = {Retardance::kFree};
  } else {
    for (Retardance r : {Retardance::kHalf, Retardance::kQuarter}) {
      if (std::find(p.allowed.begin(), p.allowed.end(), r) != p.allowed.end()) {
        kinds.push_back(r);
      }
    }
  }
  for (int length = 1; length <= p.budget; ++length) {
    // Odometer over kinds^length.
    std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
    while (true) {
      PlateLayout layout;
      for (std::size_t d : digits) layout.push_back(kinds[d]);
      layouts.push_back(std::move(layout));
      std::size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == kinds.size()) {
        digits[pos++] = 0;
      }
      if (pos == digits.size()) break;
    }
  }
  return layouts;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Snaps parameters sitting just below their period back to zero when this
/// costs no fidelity.
std::vector<double> canonical(const SynthesisProblem& p, const PlateLayout& layout,
                              std::span<const double> params) {
  const std::vector<double> periods =
      parameter_periods(layout, p.optimize_source_phase);
  std::vector<double> out(params.begin(), params.end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = wrap(out[k], periods[k]);
  const double base = fidelity_objective(p, layout, out);
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (periods[k] - out[k] < 1e-6) {
      std::vector<double> snapped = out;
      snapped[k] = 0.0;
      if (fidelity_objective(p, layout, snapped) >= base - 1e-12) out = snapped;
    }
  }
  return out;
}

Candidate search_layout(const SynthesisProblem& p, const PlateLayout& layout,
                        const SynthesisOptions& options, std::uint64_t salt,
                        long& evaluations) {
  const std::vector<double> periods =
      parameter_periods(layout, p.optimize_source_phase);
  const std::size_t dim = periods.size();
  const auto density = static_cast<long>(options.grid_density);

  // Full tensor grid if it fits in the budget, else seeded random samples.
  long full = 1;
  bool fits = true;
  for (std::size_t k = 0; k < dim; ++k) {
    if (full > options.max_grid_points / density) {
      fits = false;
      break;
    }
    full *= density;
  }
  const long n_points = fits ? full : options.max_grid_points;

  std::vector<std::vector<double>> points(static_cast<std::size_t>(n_points),
                                          std::vector<double>(dim));
  if (fits) {
    for (long i = 0; i < n_points; ++i) {
      long rest = i;
      for (std::size_t k = 0; k < dim; ++k) {
        points[static_cast<std::size_t>(i)][k] =
            periods[k] * static_cast<double>(rest % density) /
            static_cast<double>(density);
        rest /= density;
      }
    }
  } else {
    std::mt19937_64 rng(mix(options.seed, salt));
    for (auto& pt : points) {
      for (std::size_t k = 0; k < dim; ++k) {
        pt[k] = std::uniform_real_distribution<double>(0.0, periods[k])(rng);
      }
    }
  }

  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    values[i] = fidelity_objective(p, layout, points[i]);
  });
  evaluations += n_points;

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  const std::size_t n_starts =
      std::min(order.size(), static_cast<std::size_t>(options.refine_starts));

  const double step = kPi / static_cast<double>(options.grid_density) / 2;
  std::vector<Candidate> refined(n_starts);
  std::vector<long> refine_evals(n_starts, 0);
  parallel_for(n_starts, [&](std::size_t s) {
    const auto& start_pt = points[order[s]];
    Eigen::VectorXd x0 =
        Eigen::Map<const Eigen::VectorXd>(start_pt.data(),
                                          static_cast<Eigen::Index>(dim));
    auto loss = [&](const Eigen::VectorXd& x) {
      return 1.0 - fidelity_objective(
                       p, layout,
                       std::span<const double>(x.data(),
                                               static_cast<std::size_t>(x.size())));
    };
    const SimplexResult<double> r =
        nelder_mead<double>(loss, x0, step, options.refine_tolerance);
    refine_evals[s] = r.evaluations;
    // Never return something worse than the grid point we started from.
    std::vector<double> best(r.x.data(), r.x.data() + r.x.size());
    if (1.0 - r.value < values[order[s]]) best = start_pt;

    Candidate c;
    c.plates = layout.size();
    c.layout = layout;
    c.params = canonical(p, layout, best);
    c.fidelity = fidelity_objective(p, layout, c.params);
    refined[s] = std::move(c);
  });
  for (long e : refine_evals) evaluations += e;

  Candidate winner = refined.front();
  for (const Candidate& c : refined) {
    if (better(c, winner)) winner = c;
  }
  return winner;
}

}  // namespace

double fidelity_objective(const SynthesisProblem& p, const PlateLayout& layout,
                          std::span<const double> params) {
  const Decoded d = decode(layout, p.optimize_source_phase, params);
  return sequence_fidelity(p, d.plates, d.phase);
}

double fidelity_objective(const SynthesisProblem& p,
                          std::span<const double> params) {
  return fidelity_objective(p, default_layout(p), params);
}

SynthesisResult synthesize(const SynthesisProblem& p,
                           const SynthesisOptions& options) {
  p.validate();
  if (options.grid_density < 8) {
    throw Error(ErrorCode::kInvalidArgument, "grid density must be >= 8");
  }
  if (!(options.refine_tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "refine tolerance must be positive");
  }
  if (options.max_grid_points < 1 || options.refine_starts < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid cap and refine starts must be positive");
  }

  long evaluations = 0;
  std::optional<Candidate> best;
  const std::vector<PlateLayout> layouts = admissible_layouts(p);
  for (std::size_t i = 0; i < layouts.size(); ++i) {
    Candidate c = search_layout(p, layouts[i], options, i, evaluations);
    if (!best || better(c, *best)) best = std::move(c);
  }

  const Decoded d = decode(best->layout, p.optimize_source_phase, best->params);
  SynthesisResult result;
  result.plates = d.plates;
  result.source_phase = d.phase;
  result.evaluations = evaluations;
  result.fidelity = sequence_fidelity(p, result.plates, result.source_phase);
  return result;
}

SynthesisResult synthesize(const SynthesisProblem& p, int grid_density,
                           double refine_tolerance, std::uint64_t seed) {
  SynthesisOptions options;
  options.grid_density = grid_density;
  options.refine_tolerance = refine_tolerance;
  options.seed = seed;
  return synthesize(p, options);
}

ReachabilityReport reachability_report(const SynthesisProblem& p,
                                       const SynthesisResult& result) {
  const double f = sequence_fidelity(p, result.plates, result.source_phase);
  return {f > kReachableFidelity, f};
}

std::vector<Plate> inverse_plates(std::span<const Plate> plates) {
  std::vector<Plate> out;
  out.reserve(plates.size());
  for (auto it = plates.rbegin(); it != plates.rend(); ++it) {
    out.push_back(Plate{-it->retardance, it->angle}.canonical());
  }
  return out;
}

}  // namespace triphot

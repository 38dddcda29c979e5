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

// Search for retardation-plate settings that carry one biphoton state into
// another. Plates only generate the spin-1 image of U(2), so many targets are
// reachable only approximately; the search reports the best fidelity found
// rather than guessing at reachability.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "triphot/optics.hpp"

namespace triphot {

/// Retardance of one plate slot: fixed half-wave, fixed quarter-wave, or a
/// free parameter.
enum class Retardance { kHalf, kQuarter, kFree };

std::string_view to_string(Retardance r);

using PlateLayout = std::vector<Retardance>;

inline constexpr int kMaxPlateBudget = 8;

struct SynthesisProblem {
  State input = trit_basis(Trit::kMinus);
  State target = trit_basis(Trit::kZero);
  /// Longest plate sequence to try.
  int budget = 1;
  std::vector<Retardance> allowed = {Retardance::kHalf};
  /// Treat the interferometer phase phi as an extra free parameter. It acts
  /// on the input as diag(1, e^{i phi/2}, e^{i phi}), i.e. as a relative phase
  /// phi between |2,0> and |0,2>.
  bool optimize_source_phase = false;

  void validate() const;
};

struct SynthesisOptions {
  /// Grid points per angle; >= 8.
  int grid_density = 32;
  /// Refinement stops when the simplex diameter drops below this [rad].
  double refine_tolerance = 1e-10;
  std::uint64_t seed = 0;
  /// Full grids larger than this are replaced by this many seeded uniform
  /// samples.
  long max_grid_points = 20000;
  /// Best grid points refined per layout.
  int refine_starts = 4;
};

struct SynthesisResult {
  /// plates[0] acts first.
  std::vector<Plate> plates;
  std::optional<double> source_phase;
  double fidelity = 0.0;
  long evaluations = 0;
};

/// diag(1, e^{i phi/2}, e^{i phi}).
Operator3 source_phase_operator(double phi);

/// Lifted plate product, preceded by the source phase when present.
Operator3 sequence_operator(std::span<const Plate> plates,
                            std::optional<double> source_phase);

/// |<target| G input>|^2 evaluated from scratch through apply().
double sequence_fidelity(const SynthesisProblem& p,
                         std::span<const Plate> plates,
                         std::optional<double> source_phase);

/// Number of free parameters: one angle per plate, one more per free
/// retardance, one for the source phase if enabled.
std::size_t parameter_count(const PlateLayout& layout, bool source_phase);

/// `budget` copies of the single allowed retardance, or of kFree when free
/// plates are allowed. Throws kInvalidArgument if the allowed set mixes
/// fixed retardances (the layout is then a search variable).
PlateLayout default_layout(const SynthesisProblem& p);

/// Parameter order per plate: angle, then retardance if free; the source
/// phase comes last. Throws kDimensionMismatch on a wrong length.
double fidelity_objective(const SynthesisProblem& p, const PlateLayout& layout,
                          std::span<const double> params);

double fidelity_objective(const SynthesisProblem& p,
                          std::span<const double> params);

/// Coarse grid over all free angles of every admissible layout (lengths 1 to
/// budget), Nelder-Mead refinement of the best grid points, and selection of
/// the best fidelity. Ties within 1e-12 go to the shorter sequence, then to
/// the smallest canonical parameters. Deterministic for fixed inputs.
SynthesisResult synthesize(const SynthesisProblem& p,
                           const SynthesisOptions& options = {});

SynthesisResult synthesize(const SynthesisProblem& p, int grid_density,
                           double refine_tolerance, std::uint64_t seed);

/// Fidelity threshold above which a transition counts as reachable.
inline constexpr double kReachableFidelity = 1.0 - 1e-6;

struct ReachabilityReport {
  bool reachable = false;
  double fidelity = 0.0;
};

ReachabilityReport reachability_report(const SynthesisProblem& p,
                                       const SynthesisResult& result);

/// Plate list whose operator is the adjoint of the plate part of `result`:
/// reversed order, retardance negated.
std::vector<Plate> inverse_plates(std::span<const Plate> plates);

}  // namespace triphot

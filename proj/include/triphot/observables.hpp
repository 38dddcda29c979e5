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

#pragma once

#include <cmath>
#include <string_view>

#include "triphot/optics.hpp"

namespace triphot {

/// Expectations of the quantum Stokes operators, in photon-number units.
/// s0 = n_x + n_y, s1 = n_x - n_y, s2 = a_x^+ a_y + h.c.,
/// s3 = -i (a_x^+ a_y - h.c.).
template <typename Scalar = double>
struct StokesVector {
  Scalar s0 = 0;
  Scalar s1 = 0;
  Scalar s2 = 0;
  Scalar s3 = 0;

  Scalar reduced_norm() const { return std::hypot(s1, s2, s3); }
};

template <typename Scalar>
StokesVector<Scalar> stokes(const BiphotonState<Scalar>& s) {
  const Scalar r2 = std::sqrt(Scalar(2));
  // <a_x^+ a_y> = sqrt2 (c1* c2 + c2* c3)
  const Complex<Scalar> coherence =
      std::conj(s.c1()) * s.c2() + std::conj(s.c2()) * s.c3();
  StokesVector<Scalar> v;
  v.s0 = Scalar(2);
  v.s1 = Scalar(2) * (std::norm(s.c1()) - std::norm(s.c3()));
  v.s2 = Scalar(2) * r2 * coherence.real();
  v.s3 = Scalar(2) * r2 * coherence.imag();
  return v;
}

/// P = |(s1, s2, s3)| / s0. Invariant under every lifted unitary Jones map.
template <typename Scalar>
Scalar degree_of_polarization(const BiphotonState<Scalar>& s) {
  const StokesVector<Scalar> v = stokes(s);
  return v.reduced_norm() / v.s0;
}

/// Normally ordered second-order correlations:
/// gxy = <a_x^+ a_y^+ a_y a_x>, gxx = <a_x^+2 a_x^2>, gyy = <a_y^+2 a_y^2>.
template <typename Scalar = double>
struct CorrelatorSet {
  Scalar gxy = 0;
  Scalar gxx = 0;
  Scalar gyy = 0;
};

template <typename Scalar>
CorrelatorSet<Scalar> correlators(const BiphotonState<Scalar>& s) {
  return {std::norm(s.c2()), Scalar(2) * std::norm(s.c1()),
          Scalar(2) * std::norm(s.c3())};
}

/// What the two detectors behind the output polarizing beamsplitter see.
/// kDirectXY counts x/y coincidences. The analysis modes first pass the beam
/// through an x (or y) polarizer and a half-wave plate at pi/8, so that
/// coincidences measure the |2,0> (or |0,2>) population.
enum class DetectionMode { kDirectXY, kAnalysisX, kAnalysisY };

inline std::string_view to_string(DetectionMode m) {
  switch (m) {
    case DetectionMode::kDirectXY: return "none";
    case DetectionMode::kAnalysisX: return "x";
    case DetectionMode::kAnalysisY: return "y";
  }
  return "?";
}

/// Operator for the polarizer + half-wave block in front of the output PBS.
template <typename Scalar = double>
BiphotonOperator<Scalar> analysis_block(PolarizerAxis axis) {
  return lift(half_wave(Scalar(kPi) / 8)) * lift(polarizer<Scalar>(axis));
}

/// Probability that a pair in state s gives one click on each detector.
/// Detectors do not resolve photon number, so two photons in one port never
/// make a coincidence.
template <typename Scalar>
Scalar coincidence_probability(const BiphotonState<Scalar>& s,
                               DetectionMode mode, Scalar eta1, Scalar eta2) {
  if (!(eta1 >= 0 && eta1 <= 1) || !(eta2 >= 0 && eta2 <= 1)) {
    throw Error(ErrorCode::kInvalidEfficiency,
                "detector efficiencies must lie in [0, 1]");
  }
  if (mode == DetectionMode::kDirectXY) {
    return correlators(s).gxy * eta1 * eta2;
  }
  const PolarizerAxis axis =
      mode == DetectionMode::kAnalysisX ? PolarizerAxis::kX : PolarizerAxis::kY;
  const Conditioned<Scalar> passed = apply_conditioned(analysis_block<Scalar>(axis), s);
  if (!passed.state) return Scalar(0);
  return passed.survival * correlators(*passed.state).gxy * eta1 * eta2;
}

/// l_coh = lambda^2 / delta_lambda, all lengths in meters.
inline double coherence_length(double wavelength, double bandwidth) {
  if (!(bandwidth > 0)) {
    throw Error(ErrorCode::kNonPositiveBandwidth,
                "spectral bandwidth must be positive");
  }
  return wavelength * wavelength / bandwidth;
}

}  // namespace triphot

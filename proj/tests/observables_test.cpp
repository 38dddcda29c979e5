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

#include "triphot/observables.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "triphot/reference.hpp"

using namespace triphot;
using triphot::testing::shared_rng;

namespace {

void expect_stokes(const StokesVector<double>& v, double s0, double s1, double s2,
                   double s3) {
  EXPECT_NEAR(v.s0, s0, 1e-12);
  EXPECT_NEAR(v.s1, s1, 1e-12);
  EXPECT_NEAR(v.s2, s2, 1e-12);
  EXPECT_NEAR(v.s3, s3, 1e-12);
}

}  // namespace

TEST(Stokes, Examples) {
  expect_stokes(stokes(fock_basis(0)), 2, 2, 0, 0);
  expect_stokes(stokes(trit_basis(Trit::kZero)), 2, 0, 0, 0);
  expect_stokes(stokes(trit_basis(Trit::kPlus)), 2, 0, 0, 0);
  expect_stokes(stokes(trit_basis(Trit::kMinus)), 2, 0, 0, 0);
}

TEST(Stokes, MatchesModeOperatorOracle) {
  auto& rng = shared_rng();
  for (int t = 0; t < 500; ++t) {
    const State s = reference::random_state(rng);
    const auto fast = stokes(s);
    const auto slow = reference::stokes_from_modes(s);
    expect_stokes(fast, slow.s0, slow.s1, slow.s2, slow.s3);
    EXPECT_LE(fast.reduced_norm(), fast.s0 + 1e-9);
  }
}

TEST(Stokes, CircularSignConvention) {
  // Right circular pair (1, -i)/sqrt2 on both photons.
  const std::complex<double> i(0, 1);
  const Jones r = Jones::normalized(1.0, -i);
  expect_stokes(stokes(pair_state(r, r)), 2, 0, 0, -2);
}

TEST(DegreeOfPolarization, Anchors) {
  EXPECT_NEAR(degree_of_polarization(fock_basis(0)), 1.0, 1e-12);
  EXPECT_NEAR(degree_of_polarization(fock_basis(2)), 1.0, 1e-12);
  EXPECT_NEAR(degree_of_polarization(trit_basis(Trit::kPlus)), 0.0, 1e-12);
  EXPECT_NEAR(degree_of_polarization(trit_basis(Trit::kMinus)), 0.0, 1e-12);
  EXPECT_NEAR(degree_of_polarization(trit_basis(Trit::kZero)), 0.0, 1e-12);
}

TEST(DegreeOfPolarization, EqualWeightState) {
  const State s = make_state<double>(1, 1, 1);
  const auto oracle = reference::stokes_from_modes(s);
  const double p_oracle = std::hypot(oracle.s1, oracle.s2, oracle.s3) / oracle.s0;
  EXPECT_NEAR(p_oracle, 2 * std::sqrt(2.0) / 3, 1e-12);
  EXPECT_NEAR(degree_of_polarization(s), 2 * std::sqrt(2.0) / 3, 1e-12);
}

TEST(DegreeOfPolarization, BoundedByOne) {
  auto& rng = shared_rng();
  for (int t = 0; t < 500; ++t) {
    const double p = degree_of_polarization(reference::random_state(rng));
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0 + 1e-12);
  }
}

TEST(DegreeOfPolarization, PlateInvariant) {
  auto& rng = shared_rng();
  for (int t = 0; t < 300; ++t) {
    const State s = reference::random_state(rng);
    const State out = apply(lift(retarder(reference::random_plate(rng))), s);
    EXPECT_NEAR(degree_of_polarization(out), degree_of_polarization(s), 1e-10);
  }
}

TEST(Correlators, Examples) {
  const auto zero = correlators(trit_basis(Trit::kZero));
  EXPECT_NEAR(zero.gxy, 1.0, 1e-15);
  EXPECT_NEAR(zero.gxx, 0.0, 1e-15);
  EXPECT_NEAR(zero.gyy, 0.0, 1e-15);

  const auto xx = correlators(fock_basis(0));
  EXPECT_NEAR(xx.gxy, 0.0, 1e-15);
  EXPECT_NEAR(xx.gxx, 2.0, 1e-15);
  EXPECT_NEAR(xx.gyy, 0.0, 1e-15);

  const auto plus = correlators(trit_basis(Trit::kPlus));
  const auto plus_oracle = reference::correlators_from_modes(trit_basis(Trit::kPlus));
  EXPECT_NEAR(plus_oracle.gxy, 0.0, 1e-12);
  EXPECT_NEAR(plus_oracle.gxx, 1.0, 1e-12);
  EXPECT_NEAR(plus_oracle.gyy, 1.0, 1e-12);
  EXPECT_NEAR(plus.gxy, 0.0, 1e-12);
  EXPECT_NEAR(plus.gxx, 1.0, 1e-12);
  EXPECT_NEAR(plus.gyy, 1.0, 1e-12);
}

TEST(Correlators, MatchModeOperatorOracleAndDecompose) {
  auto& rng = shared_rng();
  for (int t = 0; t < 1000; ++t) {
    const State s = reference::random_state(rng);
    const auto g = correlators(s);
    const auto oracle = reference::correlators_from_modes(s);
    EXPECT_NEAR(g.gxy, oracle.gxy, 1e-12);
    EXPECT_NEAR(g.gxx, oracle.gxx, 1e-12);
    EXPECT_NEAR(g.gyy, oracle.gyy, 1e-12);
    EXPECT_NEAR(g.gxx / 2 + g.gxy + g.gyy / 2, 1.0, 1e-12);
    EXPECT_GE(g.gxy, 0.0);
    EXPECT_LE(g.gxy, 1.0 + 1e-12);
    EXPECT_LE(g.gxx, 2.0 + 1e-12);
    EXPECT_LE(g.gyy, 2.0 + 1e-12);
  }
}

TEST(Coincidence, DirectExamples) {
  EXPECT_NEAR(coincidence_probability(trit_basis(Trit::kZero), DetectionMode::kDirectXY,
                                      1.0, 1.0),
              1.0, 1e-15);
}

TEST(Coincidence, AnalysisXOnHorizontalPair) {
  // Oracle: the polarizer keeps |2,0> intact, then the half-wave plate at
  // pi/8 leaves |c2'|^2 = 1/2.
  const auto passed =
      apply_conditioned(lift(polarizer(PolarizerAxis::kX)), fock_basis(0));
  ASSERT_TRUE(passed.state);
  const State rotated = apply(lift(half_wave(kPi / 8)), *passed.state);
  const double oracle = passed.survival * correlators(rotated).gxy;
  EXPECT_NEAR(oracle, 0.5, 1e-15);
  EXPECT_NEAR(coincidence_probability(fock_basis(0), DetectionMode::kAnalysisX, 1.0, 1.0),
              0.5, 1e-12);
}

TEST(Coincidence, AnalysisXBlocksPsiZero) {
  for (double eta : {0.1, 0.5, 1.0}) {
    EXPECT_EQ(coincidence_probability(trit_basis(Trit::kZero), DetectionMode::kAnalysisX,
                                      eta, eta),
              0.0);
  }
}

TEST(Coincidence, AnalysisModesMeasureCornerPopulations) {
  auto& rng = shared_rng();
  std::uniform_real_distribution<double> eta(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const State s = reference::random_state(rng);
    const double e1 = eta(rng), e2 = eta(rng);
    EXPECT_NEAR(coincidence_probability(s, DetectionMode::kAnalysisX, e1, e2),
                std::norm(s.c1()) / 2 * e1 * e2, 1e-12);
    EXPECT_NEAR(coincidence_probability(s, DetectionMode::kAnalysisY, e1, e2),
                std::norm(s.c3()) / 2 * e1 * e2, 1e-12);
  }
}

TEST(Coincidence, LinearInEachEfficiency) {
  auto& rng = shared_rng();
  for (DetectionMode mode : {DetectionMode::kDirectXY, DetectionMode::kAnalysisX,
                             DetectionMode::kAnalysisY}) {
    const State s = reference::random_state(rng);
    const double base = coincidence_probability(s, mode, 1.0, 1.0);
    EXPECT_NEAR(coincidence_probability(s, mode, 0.3, 1.0), 0.3 * base, 1e-14);
    EXPECT_NEAR(coincidence_probability(s, mode, 1.0, 0.7), 0.7 * base, 1e-14);
    EXPECT_NEAR(coincidence_probability(s, mode, 0.3, 0.7), 0.21 * base, 1e-14);
  }
}

TEST(Coincidence, RejectsBadEfficiency) {
  for (double bad : {-0.1, 1.5, std::nan("")}) {
    try {
      coincidence_probability(trit_basis(Trit::kZero), DetectionMode::kDirectXY, bad, 1.0);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidEfficiency);
    }
  }
}

TEST(CoherenceLength, Examples) {
  EXPECT_NEAR(coherence_length(650e-9, 10e-9), 4.225e-5, 1e-18);
  EXPECT_DOUBLE_EQ(coherence_length(1.0, 1.0), 1.0);
  EXPECT_NEAR(coherence_length(325e-9, 1e-9), 1.05625e-4, 1e-18);
}

TEST(CoherenceLength, RejectsNonPositiveBandwidth) {
  try {
    coherence_length(650e-9, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveBandwidth);
  }
  EXPECT_THROW(coherence_length(650e-9, -1e-9), Error);
}

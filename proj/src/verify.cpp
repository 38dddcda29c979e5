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

#include "triphot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "triphot/experiment.hpp"
#include "triphot/reference.hpp"

namespace triphot {

namespace {

CheckResult make_check(std::string name, double residual, double tol) {
  return {std::move(name), residual, tol, residual <= tol};
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  if (options.grid < 2 || options.random_trials < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "verification needs grid >= 2 and at least one trial");
  }
  std::vector<CheckResult> checks;
  const int n = options.grid;

  auto pipeline = [&](double delta, double chi, double phi) {
    SourceSpec src;
    src.phase = phi;
    return apply(lift(retarder(delta, chi, options.convention)),
                 source_state(src));
  };

  double hwp_residual = 0.0;
  double qwp_residual = 0.0;
  for (int i = 0; i < n; ++i) {
    const double chi = kPi * i / (n - 1);
    for (int k = 0; k < n; ++k) {
      const double phi = 2 * kPi * k / (n - 1);
      const auto hwp = pipeline(kPi, chi, phi).populations();
      const Populations law = hwp_law(chi, phi);
      hwp_residual = std::max({hwp_residual, std::abs(hwp(0) - law.c1sq),
                               std::abs(hwp(1) - law.c2sq),
                               std::abs(hwp(2) - law.c3sq)});
      const double qwp = std::norm(pipeline(kPi / 2, chi, phi).c2());
      qwp_residual = std::max(qwp_residual, std::abs(qwp - qwp_law(chi, phi)));
    }
  }
  checks.push_back(make_check("hwp-closed-form-grid", hwp_residual, 1e-12));
  checks.push_back(make_check("qwp-closed-form-grid", qwp_residual, 1e-12));
  {
    const double chi = kPi / 8, phi = kPi / 2;
    const double pinned = std::norm(pipeline(kPi / 2, chi, phi).c2());
    checks.push_back(make_check("qwp-convention-point",
                                std::abs(pinned - qwp_law(chi, phi)), 1e-12));
  }

  std::mt19937_64 rng(options.seed);
  double oracle_residual = 0.0;
  double homomorphism_residual = 0.0;
  for (int t = 0; t < options.random_trials; ++t) {
    const Matrix2cd j1 = reference::random_unitary2(rng);
    const Matrix2cd j2 = reference::random_unitary2(rng);
    oracle_residual =
        std::max(oracle_residual,
                 max_abs(lift(Jones2(j1)).matrix() -
                         reference::symmetric_restriction(j1)));
    homomorphism_residual = std::max(
        homomorphism_residual,
        max_abs(lift(Jones2(j2 * j1)).matrix() -
                (lift(Jones2(j2)) * lift(Jones2(j1))).matrix()));
  }
  checks.push_back(make_check("lift-tensor-oracle", oracle_residual, 1e-12));
  checks.push_back(
      make_check("lift-homomorphism", homomorphism_residual, 1e-12));

  double unitarity_residual = 0.0;
  double p_residual = 0.0;
  double stokes_residual = 0.0;
  std::uniform_int_distribution<int> plate_count(1, 5);
  for (int t = 0; t < options.random_trials; ++t) {
    const Plate single = reference::random_plate(rng);
    unitarity_residual = std::max(
        unitarity_residual,
        lift(retarder(single, options.convention)).unitarity_residual());

    const State s = reference::random_state(rng);
    std::vector<Plate> plates(static_cast<std::size_t>(plate_count(rng)));
    for (Plate& p : plates) p = reference::random_plate(rng);
    const State out =
        apply(plate_sequence_operator<double>(plates, options.convention), s);
    p_residual = std::max(p_residual, std::abs(degree_of_polarization(out) -
                                               degree_of_polarization(s)));

    const StokesVector<double> fast = stokes(s);
    const StokesVector<double> slow = reference::stokes_from_modes(s);
    stokes_residual = std::max(
        {stokes_residual, std::abs(fast.s0 - slow.s0), std::abs(fast.s1 - slow.s1),
         std::abs(fast.s2 - slow.s2), std::abs(fast.s3 - slow.s3)});
  }
  checks.push_back(make_check("plate-unitarity", unitarity_residual, 1e-12));
  checks.push_back(make_check("polarization-degree-invariance", p_residual, 1e-10));
  checks.push_back(make_check("stokes-mode-oracle", stokes_residual, 1e-12));
  return checks;
}

}  // namespace triphot

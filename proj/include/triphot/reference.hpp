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

// Slow, brute-force constructions used to cross-check the closed forms in
// optics.hpp and observables.hpp. Nothing here calls lift(), stokes() or
// correlators().

#pragma once

#include <random>

#include "triphot/observables.hpp"

namespace triphot::reference {

/// j (x) j on the two-photon product space, ordered xx, xy, yx, yy.
Eigen::Matrix4cd tensor_square(const Matrix2cd& j);

/// Restriction of j (x) j to the symmetric subspace in the basis
/// {e_xx, (e_xy + e_yx)/sqrt2, e_yy}.
Matrix3cd symmetric_restriction(const Matrix2cd& j);

/// Two-mode Fock space truncated at two photons per mode (dimension 9).
/// Index of |nx, ny> is 3 nx + ny.
using FockMatrix = Eigen::Matrix<std::complex<double>, 9, 9>;
using FockVector = Eigen::Matrix<std::complex<double>, 9, 1>;

FockMatrix annihilation_x();
FockMatrix annihilation_y();

FockVector embed(const State& s);

std::complex<double> expectation(const State& s, const FockMatrix& op);

/// Stokes vector from <a^+ a> products of the truncated mode operators.
StokesVector<double> stokes_from_modes(const State& s);

/// Normally ordered correlators from the truncated mode operators.
CorrelatorSet<double> correlators_from_modes(const State& s);

/// Pair state from a two-photon creation polynomial: applies
/// (u.a^+)(v.a^+)|0> in the truncated Fock space, then normalizes.
State pair_state_from_modes(const Jones& u, const Jones& v);

/// Haar-random 2x2 unitary (QR of a complex Gaussian matrix, phases fixed).
Matrix2cd random_unitary2(std::mt19937_64& rng);

/// Uniformly random state on the unit sphere of C^3.
State random_state(std::mt19937_64& rng);

/// Retardance uniform in [0, 2pi), angle uniform in [0, pi).
Plate random_plate(std::mt19937_64& rng);

}  // namespace triphot::reference

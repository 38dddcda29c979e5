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

// Self-checks run by `triphot verify`: the plate pipeline against the
// closed-form coincidence laws, the lift against its tensor-product oracle,
// and plate invariance of the degree of polarization.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triphot/optics.hpp"

namespace triphot {

struct VerifyOptions {
  /// Points per axis of the (chi, phi) grids.
  int grid = 101;
  int random_trials = 1000;
  std::uint64_t seed = 20260417;
  /// Convention used to build the plates under test.
  RetarderConvention convention = kRetarderConvention;
};

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace triphot

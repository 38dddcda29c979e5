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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace triphot {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Vector2c = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar>
using Vector3c = Eigen::Matrix<std::complex<Scalar>, 3, 1>;
template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Matrix3c = Eigen::Matrix<std::complex<Scalar>, 3, 3>;

using Vector2cd = Vector2c<double>;
using Vector3cd = Vector3c<double>;
using Matrix2cd = Matrix2c<double>;
using Matrix3cd = Matrix3c<double>;

inline constexpr double kPi = std::numbers::pi;

/// Tolerance on unit norm for states and on unitarity of lossless maps.
inline constexpr double kNormTolerance = 1e-12;

/// Squared norms below this are treated as the null vector.
inline constexpr double kNullNormSq = 1e-30;

enum class ErrorCode {
  kZeroState,
  kIndexOutOfRange,
  kNonUnitaryOperator,
  kInvalidEfficiency,
  kNonPositiveBandwidth,
  kDegenerateTable,
  kOutOfRange,
  kDimensionMismatch,
  kInvalidArgument,
  kParse,
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroState: return "ZeroState";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonUnitaryOperator: return "NonUnitaryOperator";
    case ErrorCode::kInvalidEfficiency: return "InvalidEfficiency";
    case ErrorCode::kNonPositiveBandwidth: return "NonPositiveBandwidth";
    case ErrorCode::kDegenerateTable: return "DegenerateTable";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace triphot

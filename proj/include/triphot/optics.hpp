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

// Polarization optics for single photons (2x2 Jones maps) and their action
// on biphoton states (3x3 operators).
//
// A Jones map j = [[a, b], [c, d]] sends the creation operators of the x and
// y modes to a a_x^+ + c a_y^+ and b a_x^+ + d a_y^+. On the normalized
// basis (|2,0>, |1,1>, |0,2>) this induces
//
//   lift(j) = [[a^2,     sqrt2 a b, b^2    ],
//              [sqrt2 a c, a d + b c, sqrt2 b d],
//              [c^2,     sqrt2 c d, d^2    ]],
//
// the spin-1 image of U(2) inside U(3). Plates and rotators only reach this
// image; su3_exp() covers the whole of SU(3).

#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <optional>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "triphot/qutrit.hpp"

namespace triphot {

namespace internal {

/// max |(m^+ m - I)_ij|
template <typename Derived>
typename Derived::RealScalar unitarity_residual(
    const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  return (m.adjoint() * m - Plain::Identity(m.rows(), m.cols()))
      .cwiseAbs()
      .maxCoeff();
}

template <typename Scalar>
Scalar wrap(Scalar x, Scalar period) {
  Scalar r = std::fmod(x, period);
  if (r < Scalar(0)) r += period;
  if (r >= period) r -= period;
  return r;
}

}  // namespace internal

/// 2x2 complex matrix acting on the (ex, ey) column.
template <typename Scalar = double>
class JonesMap {
 public:
  using Matrix = Matrix2c<Scalar>;

  JonesMap() : m_(Matrix::Identity()) {}
  explicit JonesMap(const Matrix& m) : m_(m) {}

  static JonesMap identity() { return JonesMap(); }

  const Matrix& matrix() const { return m_; }
  Complex<Scalar> operator()(Eigen::Index r, Eigen::Index c) const {
    return m_(r, c);
  }

  JonesMap adjoint() const { return JonesMap(m_.adjoint()); }

  bool is_unitary(Scalar tol = Scalar(kNormTolerance)) const {
    return internal::unitarity_residual(m_) <= tol;
  }

  Scalar operator_norm() const {
    return Eigen::JacobiSVD<Matrix>(m_).singularValues()(0);
  }

  /// Unnormalized image of a Jones vector (polarizers may annihilate it).
  Vector2c<Scalar> operator*(const JonesVector<Scalar>& v) const {
    return m_ * v.amplitudes();
  }

  friend JonesMap operator*(const JonesMap& lhs, const JonesMap& rhs) {
    return JonesMap(lhs.m_ * rhs.m_);
  }

 private:
  Matrix m_;
};

using Jones2 = JonesMap<double>;

/// A linear retarder: retardance in radians, optic-axis angle from x.
template <typename Scalar = double>
struct PlateSpec {
  Scalar retardance = Scalar(kPi);
  Scalar angle = Scalar(0);

  static PlateSpec half_wave(Scalar chi) { return {Scalar(kPi), chi}; }
  static PlateSpec quarter_wave(Scalar chi) { return {Scalar(kPi) / 2, chi}; }

  /// Retardance into [0, 2pi), angle into [0, pi). Both reductions change the
  /// Jones matrix by at most a sign, so the biphoton action is unchanged.
  PlateSpec canonical() const {
    return {internal::wrap(retardance, Scalar(2 * kPi)),
            internal::wrap(angle, Scalar(kPi))};
  }

  friend bool operator==(const PlateSpec&, const PlateSpec&) = default;
};

using Plate = PlateSpec<double>;

/// Which of the two retarder phase conventions to build.
///
/// kAxisAdvanced puts e^{+i delta/2} on the axis at angle chi and is the
/// convention under which the quarter-wave coincidence law
/// sin^2 2chi (cos phi/2 + cos 2chi sin phi/2)^2 holds. kAxisRetarded is its
/// complex conjugate and yields the law with the opposite sign inside the
/// bracket; it exists so the convention check can be run both ways.
enum class RetarderConvention { kAxisAdvanced, kAxisRetarded };

inline constexpr RetarderConvention kRetarderConvention =
    RetarderConvention::kAxisAdvanced;

template <typename Scalar = double>
JonesMap<Scalar> rotator(Scalar theta) {
  const Scalar c = std::cos(theta);
  const Scalar s = std::sin(theta);
  Matrix2c<Scalar> r;
  r << c, -s, s, c;
  return JonesMap<Scalar>(r);
}

/// R(chi) diag(e^{+-i delta/2}, e^{-+i delta/2}) R(-chi).
template <typename Scalar = double>
JonesMap<Scalar> retarder(
    Scalar delta, Scalar chi,
    RetarderConvention convention = kRetarderConvention) {
  const Scalar sign =
      convention == RetarderConvention::kAxisAdvanced ? Scalar(1) : Scalar(-1);
  const Complex<Scalar> along = std::polar(Scalar(1), sign * delta / 2);
  Matrix2c<Scalar> phase = Matrix2c<Scalar>::Zero();
  phase(0, 0) = along;
  phase(1, 1) = std::conj(along);
  return rotator(chi) * JonesMap<Scalar>(phase) * rotator(-chi);
}

template <typename Scalar = double>
JonesMap<Scalar> retarder(const PlateSpec<Scalar>& plate,
                          RetarderConvention convention = kRetarderConvention) {
  return retarder(plate.retardance, plate.angle, convention);
}

template <typename Scalar = double>
JonesMap<Scalar> half_wave(Scalar chi) {
  return retarder(Scalar(kPi), chi);
}

template <typename Scalar = double>
JonesMap<Scalar> quarter_wave(Scalar chi) {
  return retarder(Scalar(kPi) / 2, chi);
}

enum class PolarizerAxis { kX, kY };

template <typename Scalar = double>
JonesMap<Scalar> polarizer(PolarizerAxis axis) {
  Matrix2c<Scalar> m = Matrix2c<Scalar>::Zero();
  if (axis == PolarizerAxis::kX) {
    m(0, 0) = Scalar(1);
  } else {
    m(1, 1) = Scalar(1);
  }
  return JonesMap<Scalar>(m);
}

/// 3x3 operator on biphoton amplitudes.
template <typename Scalar = double>
class BiphotonOperator {
 public:
  using Matrix = Matrix3c<Scalar>;

  BiphotonOperator() : g_(Matrix::Identity()) {}
  explicit BiphotonOperator(const Matrix& g) : g_(g) {}

  static BiphotonOperator identity() { return BiphotonOperator(); }

  const Matrix& matrix() const { return g_; }
  Complex<Scalar> operator()(Eigen::Index r, Eigen::Index c) const {
    return g_(r, c);
  }

  BiphotonOperator adjoint() const { return BiphotonOperator(g_.adjoint()); }

  Scalar unitarity_residual() const { return internal::unitarity_residual(g_); }

  bool is_unitary(Scalar tol = Scalar(kNormTolerance)) const {
    return unitarity_residual() <= tol;
  }

  Scalar operator_norm() const {
    return Eigen::JacobiSVD<Matrix>(g_).singularValues()(0);
  }

  Complex<Scalar> determinant() const { return g_.determinant(); }

  friend BiphotonOperator operator*(const BiphotonOperator& lhs,
                                    const BiphotonOperator& rhs) {
    return BiphotonOperator(lhs.g_ * rhs.g_);
  }

 private:
  Matrix g_;
};

using Operator3 = BiphotonOperator<double>;

template <typename Scalar>
BiphotonOperator<Scalar> lift(const JonesMap<Scalar>& j) {
  const Complex<Scalar> a = j(0, 0), b = j(0, 1), c = j(1, 0), d = j(1, 1);
  const Scalar r2 = std::sqrt(Scalar(2));
  Matrix3c<Scalar> g;
  g << a * a, r2 * a * b, b * b,
       r2 * a * c, a * d + b * c, r2 * b * d,
       c * c, r2 * c * d, d * d;
  return BiphotonOperator<Scalar>(g);
}

/// g2 after g1.
template <typename Scalar>
BiphotonOperator<Scalar> compose(const BiphotonOperator<Scalar>& g2,
                                 const BiphotonOperator<Scalar>& g1) {
  return g2 * g1;
}

/// Lifted product of a plate sequence; plates[0] acts first.
template <typename Scalar, typename Range>
BiphotonOperator<Scalar> plate_sequence_operator(
    const Range& plates, RetarderConvention convention = kRetarderConvention) {
  JonesMap<Scalar> total;
  for (const PlateSpec<Scalar>& p : plates) {
    total = retarder(p, convention) * total;
  }
  return lift(total);
}

/// Unitary evolution. Throws kNonUnitaryOperator unless g is unitary within
/// kNormTolerance; use apply_conditioned() for lossy maps.
template <typename Scalar>
BiphotonState<Scalar> apply(const BiphotonOperator<Scalar>& g,
                            const BiphotonState<Scalar>& s) {
  const Scalar residual = g.unitarity_residual();
  if (!(residual <= Scalar(kNormTolerance))) {
    throw Error(ErrorCode::kNonUnitaryOperator,
                "operator is not unitary (residual " +
                    std::to_string(residual) + ")");
  }
  const Vector3c<Scalar> out = g.matrix() * s.amplitudes();
  assert(std::abs(out.squaredNorm() - Scalar(1)) < Scalar(1e-10));
  return BiphotonState<Scalar>::normalized(out);
}

template <typename Scalar>
struct Conditioned {
  /// Empty when no pair survives.
  std::optional<BiphotonState<Scalar>> state;
  /// Probability that the pair survives intact, ||g s||^2.
  Scalar survival = Scalar(0);
};

/// Post-selected evolution through a contractive map (polarizers, losses).
template <typename Scalar>
Conditioned<Scalar> apply_conditioned(const BiphotonOperator<Scalar>& g,
                                      const BiphotonState<Scalar>& s) {
  if (!(g.operator_norm() <= Scalar(1) + Scalar(kNormTolerance))) {
    throw Error(ErrorCode::kInvalidArgument,
                "conditioned operator must be contractive");
  }
  const Vector3c<Scalar> out = g.matrix() * s.amplitudes();
  Conditioned<Scalar> result;
  result.survival = out.squaredNorm();
  if (result.survival >= Scalar(kNullNormSq)) {
    result.state = BiphotonState<Scalar>::normalized(out);
  }
  return result;
}

/// Coefficients of the traceless Hermitian generator in the Gell-Mann basis.
template <typename Scalar = double>
using Su3Params = Eigen::Matrix<Scalar, 8, 1>;

/// Gell-Mann matrix lambda_k for k = 1..8.
template <typename Scalar = double>
Matrix3c<Scalar> gell_mann(int k) {
  using C = Complex<Scalar>;
  const C i(0, 1);
  Matrix3c<Scalar> m = Matrix3c<Scalar>::Zero();
  switch (k) {
    case 1: m(0, 1) = m(1, 0) = 1; break;
    case 2: m(0, 1) = -i; m(1, 0) = i; break;
    case 3: m(0, 0) = 1; m(1, 1) = -1; break;
    case 4: m(0, 2) = m(2, 0) = 1; break;
    case 5: m(0, 2) = -i; m(2, 0) = i; break;
    case 6: m(1, 2) = m(2, 1) = 1; break;
    case 7: m(1, 2) = -i; m(2, 1) = i; break;
    case 8: {
      const Scalar s = Scalar(1) / std::sqrt(Scalar(3));
      m(0, 0) = s; m(1, 1) = s; m(2, 2) = Scalar(-2) * s;
      break;
    }
    default:
      throw Error(ErrorCode::kIndexOutOfRange,
                  "Gell-Mann index must be in 1..8, got " + std::to_string(k));
  }
  return m;
}

/// exp(i sum_k theta_k lambda_k), via the eigendecomposition of the
/// Hermitian generator.
template <typename Scalar>
BiphotonOperator<Scalar> su3_exp(const Su3Params<Scalar>& theta) {
  if (!theta.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "SU(3) parameters must be finite");
  }
  Matrix3c<Scalar> h = Matrix3c<Scalar>::Zero();
  for (int k = 0; k < 8; ++k) h += theta(k) * gell_mann<Scalar>(k + 1);
  Eigen::SelfAdjointEigenSolver<Matrix3c<Scalar>> eig(h);
  const auto& v = eig.eigenvectors();
  Vector3c<Scalar> phases;
  for (int k = 0; k < 3; ++k) {
    phases(k) = std::polar(Scalar(1), eig.eigenvalues()(k));
  }
  return BiphotonOperator<Scalar>(v * phases.asDiagonal() * v.adjoint());
}

/// Candidate Jones map j with lift(j) close to g, read off from the corner
/// entries (a^2, b^2) and the sqrt2-weighted off-diagonals. The pivot is
/// whichever of a, b is larger, which for unitary j is at least 1/sqrt2.
template <typename Scalar>
JonesMap<Scalar> jones_preimage(const BiphotonOperator<Scalar>& g) {
  using C = Complex<Scalar>;
  const Scalar r2 = std::sqrt(Scalar(2));
  C a, b, c, d;
  if (std::abs(g(0, 0)) >= std::abs(g(0, 2))) {
    a = std::sqrt(g(0, 0));
    b = g(0, 1) / (r2 * a);
    c = g(1, 0) / (r2 * a);
    d = (g(1, 1) - b * c) / a;
  } else {
    b = std::sqrt(g(0, 2));
    a = g(0, 1) / (r2 * b);
    d = g(1, 2) / (r2 * b);
    c = (g(1, 1) - a * d) / b;
  }
  Matrix2c<Scalar> j;
  j << a, b, c, d;
  return JonesMap<Scalar>(j);
}

/// True iff g is the lift of some 2x2 unitary, i.e. realizable with
/// retardation plates and rotators. A global phase on g is absorbed because
/// lift(e^{i t} j) = e^{2 i t} lift(j).
template <typename Scalar>
bool is_in_plate_subgroup(const BiphotonOperator<Scalar>& g,
                          Scalar tol = Scalar(1e-9)) {
  if (std::abs(g(0, 0)) < Scalar(kNullNormSq) &&
      std::abs(g(0, 2)) < Scalar(kNullNormSq)) {
    return false;
  }
  const JonesMap<Scalar> j = jones_preimage(g);
  if (!j.matrix().allFinite()) return false;
  const Scalar lift_residual =
      (lift(j).matrix() - g.matrix()).cwiseAbs().maxCoeff();
  return lift_residual < tol && j.is_unitary(tol);
}

}  // namespace triphot

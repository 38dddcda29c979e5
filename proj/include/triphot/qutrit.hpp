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

// Polarization state of a two-photon field in one spatial mode.
//
// The state lives in the symmetric two-photon space spanned by the Fock
// states |2,0>, |1,1>, |0,2> (photons in x, photons in y). Amplitudes are
// stored in that order. States are kept normalized and carry their concrete
// global phase; use fidelity() or equal_up_to_phase() when the phase should
// not matter.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "triphot/types.hpp"

namespace triphot {

namespace internal {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const auto z = m(i);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

}  // namespace internal

/// Unit vector in the (|2,0>, |1,1>, |0,2>) basis.
template <typename Scalar = double>
class BiphotonState {
 public:
  using Vector = Vector3c<Scalar>;

  /// Divides `v` by its Euclidean norm. Throws kZeroState for a null vector.
  static BiphotonState normalized(const Vector& v) {
    if (!internal::all_finite(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "biphoton amplitudes must be finite");
    }
    const Scalar n2 = v.squaredNorm();
    if (!(n2 > Scalar(kNullNormSq))) {
      throw Error(ErrorCode::kZeroState, "biphoton amplitudes have zero norm");
    }
    return BiphotonState(v / std::sqrt(n2));
  }

  const Vector& amplitudes() const { return v_; }
  Complex<Scalar> operator[](Eigen::Index i) const { return v_(i); }

  Complex<Scalar> c1() const { return v_(0); }
  Complex<Scalar> c2() const { return v_(1); }
  Complex<Scalar> c3() const { return v_(2); }

  /// Occupation probabilities |c1|^2, |c2|^2, |c3|^2.
  Eigen::Matrix<Scalar, 3, 1> populations() const { return v_.cwiseAbs2(); }

 private:
  explicit BiphotonState(const Vector& v) : v_(v) {}

  Vector v_;
};

using State = BiphotonState<double>;

/// Single-photon polarization amplitudes (ex, ey), normalized.
template <typename Scalar = double>
class JonesVector {
 public:
  using Vector = Vector2c<Scalar>;

  static JonesVector normalized(const Vector& v) {
    if (!internal::all_finite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "Jones amplitudes must be finite");
    }
    const Scalar n2 = v.squaredNorm();
    if (!(n2 > Scalar(kNullNormSq))) {
      throw Error(ErrorCode::kZeroState, "Jones vector has zero norm");
    }
    return JonesVector(v / std::sqrt(n2));
  }

  static JonesVector normalized(Complex<Scalar> ex, Complex<Scalar> ey) {
    return normalized(Vector(ex, ey));
  }

  const Vector& amplitudes() const { return v_; }
  Complex<Scalar> ex() const { return v_(0); }
  Complex<Scalar> ey() const { return v_(1); }

 private:
  explicit JonesVector(const Vector& v) : v_(v) {}

  Vector v_;
};

using Jones = JonesVector<double>;

/// The three orthogonal-pair states Psi+, Psi-, Psi0 used as ternary digits.
/// Digits are fixed: plus = 0, minus = 1, zero = 2.
enum class Trit { kPlus = 0, kMinus = 1, kZero = 2 };

constexpr int digit(Trit t) { return static_cast<int>(t); }

inline Trit trit_from_digit(int d) {
  if (d < 0 || d > 2) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "trit digit must be 0, 1 or 2, got " + std::to_string(d));
  }
  return static_cast<Trit>(d);
}

inline std::string_view to_string(Trit t) {
  switch (t) {
    case Trit::kPlus: return "plus";
    case Trit::kMinus: return "minus";
    case Trit::kZero: return "zero";
  }
  return "?";
}

/// Accepts "plus"/"minus"/"zero" with optional "psi_" prefix.
inline std::optional<Trit> parse_trit(std::string_view s) {
  if (s.starts_with("psi_")) s.remove_prefix(4);
  if (s == "plus" || s == "+") return Trit::kPlus;
  if (s == "minus" || s == "-") return Trit::kMinus;
  if (s == "zero" || s == "0") return Trit::kZero;
  return std::nullopt;
}

template <typename Scalar = double>
BiphotonState<Scalar> make_state(Complex<Scalar> c1, Complex<Scalar> c2,
                                 Complex<Scalar> c3) {
  return BiphotonState<Scalar>::normalized(Vector3c<Scalar>(c1, c2, c3));
}

template <typename Scalar = double>
BiphotonState<Scalar> make_state(const Vector3c<Scalar>& v) {
  return BiphotonState<Scalar>::normalized(v);
}

/// k = 0, 1, 2 gives |2,0>, |1,1>, |0,2>.
template <typename Scalar = double>
BiphotonState<Scalar> fock_basis(int k) {
  if (k < 0 || k > 2) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "Fock index must be 0, 1 or 2, got " + std::to_string(k));
  }
  Vector3c<Scalar> v = Vector3c<Scalar>::Zero();
  v(k) = Scalar(1);
  return BiphotonState<Scalar>::normalized(v);
}

template <typename Scalar = double>
BiphotonState<Scalar> trit_basis(Trit t) {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  switch (t) {
    case Trit::kPlus: return make_state<Scalar>(h, Scalar(0), h);
    case Trit::kMinus: return make_state<Scalar>(h, Scalar(0), -h);
    case Trit::kZero: break;
  }
  return fock_basis<Scalar>(1);
}

/// <a|b>, antilinear in the first argument.
template <typename Scalar>
Complex<Scalar> overlap(const BiphotonState<Scalar>& a,
                        const BiphotonState<Scalar>& b) {
  return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2, clamped to [0, 1] against rounding.
template <typename Scalar>
Scalar fidelity(const BiphotonState<Scalar>& a,
                const BiphotonState<Scalar>& b) {
  return std::min(std::norm(overlap(a, b)), Scalar(1));
}

template <typename Scalar>
bool equal_up_to_phase(const BiphotonState<Scalar>& a,
                       const BiphotonState<Scalar>& b,
                       Scalar tol = Scalar(kNormTolerance)) {
  return fidelity(a, b) >= Scalar(1) - tol;
}

/// One photon polarized along u and one along v, symmetrized.
template <typename Scalar>
BiphotonState<Scalar> pair_state(const JonesVector<Scalar>& u,
                                 const JonesVector<Scalar>& v) {
  const Scalar inv_sqrt2 = Scalar(1) / std::sqrt(Scalar(2));
  // The symmetric product of two unit vectors has squared norm
  // (1 + |<u|v>|^2) / 2 >= 1/2, so normalization cannot fail here.
  return make_state<Scalar>(
      u.ex() * v.ex(), (u.ex() * v.ey() + u.ey() * v.ex()) * inv_sqrt2,
      u.ey() * v.ey());
}

}  // namespace triphot

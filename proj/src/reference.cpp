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

#include "triphot/reference.hpp"

#include <cmath>

namespace triphot::reference {

Eigen::Matrix4cd tensor_square(const Matrix2cd& j) {
  Eigen::Matrix4cd out;
  for (int r1 = 0; r1 < 2; ++r1)
    for (int r2 = 0; r2 < 2; ++r2)
      for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2)
          out(2 * r1 + r2, 2 * c1 + c2) = j(r1, c1) * j(r2, c2);
  return out;
}

Matrix3cd symmetric_restriction(const Matrix2cd& j) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<std::complex<double>, 4, 3> iso =
      Eigen::Matrix<std::complex<double>, 4, 3>::Zero();
  iso(0, 0) = 1.0;
  iso(1, 1) = h;
  iso(2, 1) = h;
  iso(3, 2) = 1.0;
  return iso.adjoint() * tensor_square(j) * iso;
}

namespace {

constexpr int index_of(int nx, int ny) { return 3 * nx + ny; }

}  // namespace

FockMatrix annihilation_x() {
  FockMatrix a = FockMatrix::Zero();
  for (int nx = 1; nx <= 2; ++nx)
    for (int ny = 0; ny <= 2; ++ny)
      a(index_of(nx - 1, ny), index_of(nx, ny)) = std::sqrt(double(nx));
  return a;
}

FockMatrix annihilation_y() {
  FockMatrix a = FockMatrix::Zero();
  for (int nx = 0; nx <= 2; ++nx)
    for (int ny = 1; ny <= 2; ++ny)
      a(index_of(nx, ny - 1), index_of(nx, ny)) = std::sqrt(double(ny));
  return a;
}

FockVector embed(const State& s) {
  FockVector v = FockVector::Zero();
  v(index_of(2, 0)) = s.c1();
  v(index_of(1, 1)) = s.c2();
  v(index_of(0, 2)) = s.c3();
  return v;
}

std::complex<double> expectation(const State& s, const FockMatrix& op) {
  const FockVector v = embed(s);
  return v.dot(op * v);
}

StokesVector<double> stokes_from_modes(const State& s) {
  const FockMatrix ax = annihilation_x();
  const FockMatrix ay = annihilation_y();
  const std::complex<double> i(0, 1);
  const FockMatrix nx = ax.adjoint() * ax;
  const FockMatrix ny = ay.adjoint() * ay;
  const FockMatrix xy = ax.adjoint() * ay;
  StokesVector<double> v;
  v.s0 = expectation(s, nx + ny).real();
  v.s1 = expectation(s, nx - ny).real();
  v.s2 = expectation(s, xy + xy.adjoint()).real();
  v.s3 = expectation(s, -i * (xy - xy.adjoint())).real();
  return v;
}

CorrelatorSet<double> correlators_from_modes(const State& s) {
  const FockMatrix ax = annihilation_x();
  const FockMatrix ay = annihilation_y();
  CorrelatorSet<double> g;
  g.gxy = expectation(s, ax.adjoint() * ay.adjoint() * ay * ax).real();
  g.gxx = expectation(s, ax.adjoint() * ax.adjoint() * ax * ax).real();
  g.gyy = expectation(s, ay.adjoint() * ay.adjoint() * ay * ay).real();
  return g;
}

State pair_state_from_modes(const Jones& u, const Jones& v) {
  const FockMatrix cx = annihilation_x().adjoint();
  const FockMatrix cy = annihilation_y().adjoint();
  FockVector vacuum = FockVector::Zero();
  vacuum(index_of(0, 0)) = 1.0;
  const FockVector out =
      (u.ex() * cx + u.ey() * cy) * ((v.ex() * cx + v.ey() * cy) * vacuum);
  return make_state<double>(out(index_of(2, 0)), out(index_of(1, 1)),
                            out(index_of(0, 2)));
}

Matrix2cd random_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix2cd z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) z(r, c) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Matrix2cd> qr(z);
  Matrix2cd q = qr.householderQ();
  const Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) {
    const double m = std::abs(r(k, k));
    if (m > 0) q.col(k) *= r(k, k) / m;
  }
  return q;
}

State random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector3cd v;
  for (int k = 0; k < 3; ++k) v(k) = {gauss(rng), gauss(rng)};
  return make_state(v);
}

Plate random_plate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> delta(0.0, 2 * kPi);
  std::uniform_real_distribution<double> chi(0.0, kPi);
  const double d = delta(rng);
  return Plate{d, chi(rng)};
}

}  // namespace triphot::reference

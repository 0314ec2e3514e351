// Copyright 2026 The Dephasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dephasim/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "dephasim/errors.hpp"

namespace dephasim {

namespace pauli {
Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

DensityMatrix DensityMatrix::from_entries(double rho11, Complex rho12, double rho22) {
  DensityMatrix m(rho11, rho12, std::conj(rho12), rho22);
  m.validate();
  return m;
}

DensityMatrix DensityMatrix::from_entries(Complex rho11, Complex rho12, Complex rho21,
                                          Complex rho22) {
  DensityMatrix m(rho11, rho12, rho21, rho22);
  m.validate();
  return m;
}

DensityMatrix DensityMatrix::from_matrix(const Eigen::Matrix2cd& m) {
  return from_entries(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

DensityMatrix DensityMatrix::plus() { return from_entries(0.5, 0.5, 0.5); }
DensityMatrix DensityMatrix::excited() { return from_entries(1.0, 0.0, 0.0); }
DensityMatrix DensityMatrix::ground() { return from_entries(0.0, 0.0, 1.0); }

void DensityMatrix::validate() const {
  std::ostringstream os;
  const bool finite = std::isfinite(std::abs(r11_)) && std::isfinite(std::abs(r12_)) &&
                      std::isfinite(std::abs(r21_)) && std::isfinite(std::abs(r22_));
  if (!finite) {
    os << "density matrix has non-finite entries";
  } else if (r11_.imag() != 0.0 || r22_.imag() != 0.0 || r21_ != std::conj(r12_)) {
    os << "density matrix is not Hermitian";
  } else if (std::abs(trace() - 1.0) > kTraceTolerance) {
    os << "density matrix trace " << trace() << " differs from 1";
  } else if (r11_.real() < -kDiagonalTolerance || r22_.real() < -kDiagonalTolerance) {
    os << "density matrix has negative population";
  } else if (min_eigenvalue() < -kPositivityTolerance) {
    os << "density matrix is not positive semidefinite (min eigenvalue "
       << min_eigenvalue() << ")";
  } else {
    return;
  }
  throw StateError(os.str());
}

double DensityMatrix::min_eigenvalue() const noexcept {
  const double a = r11_.real();
  const double d = r22_.real();
  const double half_gap = 0.5 * (a - d);
  return 0.5 * (a + d) - std::hypot(half_gap, std::abs(r12_));
}

Eigen::Matrix2cd DensityMatrix::matrix() const {
  Eigen::Matrix2cd m;
  m << r11_, r12_, r21_, r22_;
  return m;
}

double sinc(double r) noexcept {
  if (std::abs(r) < 1e-4) {
    const double r2 = r * r;
    return 1.0 - r2 / 6.0 + r2 * r2 / 120.0;
  }
  return std::sin(r) / r;
}

PropagatorCoefficients f_coefficients(const PhasePair& p) noexcept {
  const double longitudinal = p.phi_z + p.omega0_t;
  const double r = std::hypot(p.phi_x, longitudinal);
  const double s = sinc(r);
  return {std::cos(r), -p.phi_x * s, -longitudinal * s};
}

void MapCoefficients::validate(double slack) const {
  std::ostringstream os;
  auto in_unit = [&](double v) { return v >= -slack && v <= 1.0 + slack; };
  if (!std::isfinite(a_i) || !std::isfinite(a_x) || !std::isfinite(a_z) ||
      !std::isfinite(a_iz)) {
    os << "map coefficients are not finite";
  } else if (std::abs(unitarity_sum() - 1.0) > slack) {
    os << "map coefficients violate A_I + A_x + A_z = 1 (sum " << unitarity_sum() << ")";
  } else if (!in_unit(a_i) || !in_unit(a_x) || !in_unit(a_z)) {
    os << "map coefficients outside [0, 1]: (" << a_i << ", " << a_x << ", " << a_z << ")";
  } else if (std::abs(a_iz) > 0.5 + slack) {
    os << "|A_Iz| = " << std::abs(a_iz) << " exceeds 1/2";
  } else {
    return;
  }
  throw StateError(os.str());
}

MapCoefficients MapCoefficients::noiseless(double omega0_t) noexcept {
  const double c = std::cos(omega0_t);
  const double s = std::sin(omega0_t);
  return {c * c, 0.0, s * s, -0.5 * std::sin(2.0 * omega0_t)};
}

Complex offdiag_coefficient(const MapCoefficients& c) noexcept {
  return {c.a_i - c.a_z, 2.0 * c.a_iz};
}

DensityMatrix evolve_state(const DensityMatrix& rho0, const MapCoefficients& c) {
  c.validate();
  const Complex k = offdiag_coefficient(c);
  const double keep = c.a_i + c.a_z;
  const double p1 = rho0.rho11().real();
  const double p2 = rho0.rho22().real();
  const double r11 = keep * p1 + c.a_x * p2;
  const double r22 = c.a_x * p1 + keep * p2;
  const Complex r12 = k * rho0.rho12() + c.a_x * rho0.rho21();
  const Complex r21 = std::conj(k) * rho0.rho21() + c.a_x * rho0.rho12();
  return DensityMatrix::from_entries(r11, r12, r21, r22);
}

Eigen::Matrix2cd evolve_operator_sum(const Eigen::Matrix2cd& rho0,
                                     const MapCoefficients& c) {
  const Eigen::Matrix2cd sx = pauli::x();
  const Eigen::Matrix2cd sz = pauli::z();
  const Eigen::Matrix2cd commutator = sz * rho0 - rho0 * sz;
  return c.a_i * rho0 + c.a_x * (sx * rho0 * sx) + c.a_z * (sz * rho0 * sz) +
         Complex(0.0, c.a_iz) * commutator;
}

bool is_effective_dephasing(const MapCoefficients& c, double threshold) {
  if (!(threshold > 0.0)) throw ParameterError("dephasing threshold must be > 0");
  return std::abs(c.a_x) < threshold;
}

}  // namespace dephasim

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

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace dephasim {

using Complex = std::complex<double>;

/// 2×2 qubit state in the computational basis |1⟩, |2⟩ with σ_z = diag(1, -1).
/// Construction through the factory functions validates Hermiticity, unit
/// trace and positivity.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kDiagonalTolerance = 1e-12;
  static constexpr double kPositivityTolerance = 1e-10;

  /// Validated state from its independent entries; rho21 = conj(rho12).
  static DensityMatrix from_entries(double rho11, Complex rho12, double rho22);
  /// Validated state from all four entries (must be Hermitian).
  static DensityMatrix from_entries(Complex rho11, Complex rho12, Complex rho21,
                                    Complex rho22);
  static DensityMatrix from_matrix(const Eigen::Matrix2cd& m);

  /// |+⟩⟨+| with |+⟩ = (|1⟩ + |2⟩)/√2.
  static DensityMatrix plus();
  /// |1⟩⟨1|.
  static DensityMatrix excited();
  /// |2⟩⟨2|.
  static DensityMatrix ground();

  Complex rho11() const noexcept { return r11_; }
  Complex rho12() const noexcept { return r12_; }
  Complex rho21() const noexcept { return r21_; }
  Complex rho22() const noexcept { return r22_; }

  double trace() const noexcept { return (r11_ + r22_).real(); }
  double min_eigenvalue() const noexcept;
  Eigen::Matrix2cd matrix() const;

 private:
  DensityMatrix(Complex r11, Complex r12, Complex r21, Complex r22)
      : r11_(r11), r12_(r12), r21_(r21), r22_(r22) {}
  void validate() const;

  Complex r11_, r12_, r21_, r22_;
};

/// Noise phases and deterministic precession entering the quasi-static
/// propagator exp{-i[(ω₀t + φ_z)σ_z + φ_x σ_x]}.
struct PhasePair {
  double phi_x = 0.0;
  double phi_z = 0.0;
  double omega0_t = 0.0;
};

/// Pauli-basis components of U = f_i·I + i f_x σ_x + i f_z σ_z.
struct PropagatorCoefficients {
  double f_i;
  double f_x;
  double f_z;
};

/// sin(r)/r with the r → 0 limit.
double sinc(double r) noexcept;

PropagatorCoefficients f_coefficients(const PhasePair& p) noexcept;

/// Coefficients of the averaged random-unitary map
///   ρ ↦ A_I ρ + A_x σ_x ρ σ_x + A_z σ_z ρ σ_z + i A_Iz [σ_z, ρ].
struct MapCoefficients {
  static constexpr double kSumTolerance = 1e-9;

  double a_i = 1.0;
  double a_x = 0.0;
  double a_z = 0.0;
  double a_iz = 0.0;

  double unitarity_sum() const noexcept { return a_i + a_x + a_z; }
  /// Throws StateError if the sum rule or the bounds are violated beyond
  /// `slack`.
  void validate(double slack = kSumTolerance) const;

  static MapCoefficients noiseless(double omega0_t) noexcept;
};

/// Multiplier of ρ₁₂ in the evolved state, A_I + 2i A_Iz - A_z.
Complex offdiag_coefficient(const MapCoefficients& c) noexcept;

/// Evolved state from the explicit matrix form.
DensityMatrix evolve_state(const DensityMatrix& rho0, const MapCoefficients& c);

/// Same map written as a Kraus-style operator sum; used to cross-check
/// evolve_state.
Eigen::Matrix2cd evolve_operator_sum(const Eigen::Matrix2cd& rho0,
                                     const MapCoefficients& c);

/// True when |A_x| < threshold, i.e. the map changes populations by less
/// than the threshold and acts as a (complex) dephasing.
bool is_effective_dephasing(const MapCoefficients& c, double threshold);

namespace pauli {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
}  // namespace pauli

}  // namespace dephasim

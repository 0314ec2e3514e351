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

#include "dephasim/dynamics.hpp"

namespace dephasim {

/// Which limit an off-diagonal formula is written for.
enum class Regime {
  LargeQubitFrequency,  // R_ω ≫ 1
  SmallDampingRatio,    // R_Γ ≪ 1
};

// Second-order (small noise phase) expansions. All of them require
// omega0_t > 0 and throw DomainError otherwise; use the quadrature for the
// ω₀t = 0 limit.

/// Ã_I, Ã_x, Ã_z, Ã_Iz for a purely transverse field with phase variance β.
MapCoefficients approx_coefficients_transverse(double beta, double omega0_t);

Complex approx_offdiag_transverse(double beta, double omega0_t, Regime regime);

/// Ã_x with both field components:
///   β_x sin²(ω₀t)/(ω₀t)² + β_x β_z/(2(ω₀t)⁴)·[3 + (2(ω₀t)² - 3)cos 2ω₀t - 4ω₀t sin 2ω₀t].
/// The second term is ½β_xβ_z d²/dy²[sin²y/y²] at y = ω₀t.
double approx_ax_general(double beta_x, double beta_z, double omega0_t);

Complex approx_offdiag_general(double beta_x, double beta_z, double omega0_t,
                               Regime regime);

/// Map coefficients assembled from approx_ax_general and the
/// SmallDampingRatio off-diagonal multiplier, closing A_I + A_z = 1 - Ã_x.
/// Reduces to approx_coefficients_transverse when β_z = 0.
MapCoefficients approx_coefficients_general(double beta_x, double beta_z, double omega0_t);

/// Exact off-diagonal multiplier without transverse noise:
/// E[e^{-2i(ω₀t + φ_z)}] = e^{-2β_z} e^{-2iω₀t}.
Complex exact_dephasing_offdiag(double beta_z, double omega0_t);

}  // namespace dephasim

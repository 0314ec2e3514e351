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

#include "dephasim/approx.hpp"

#include <cmath>
#include <sstream>

#include "dephasim/errors.hpp"

namespace dephasim {
namespace {

void require_positive_phase(double omega0_t) {
  if (!(omega0_t > 0.0) || !std::isfinite(omega0_t)) {
    std::ostringstream os;
    os << "second-order expansions need omega0_t > 0, got " << omega0_t;
    throw DomainError(os.str());
  }
}

void require_variance(double beta, const char* name) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    std::ostringstream os;
    os << name << " must be finite and >= 0, got " << beta;
    throw ParameterError(os.str());
  }
}

Complex unitary_phase(double omega0_t) { return std::polar(1.0, -2.0 * omega0_t); }

}  // namespace

MapCoefficients approx_coefficients_transverse(double beta, double omega0_t) {
  require_positive_phase(omega0_t);
  require_variance(beta, "beta");
  const double t = omega0_t;
  const double s = std::sin(t);
  const double c = std::cos(t);
  const double s2 = std::sin(2.0 * t);
  const double c2 = std::cos(2.0 * t);
  const double sinc2 = s * s / (t * t);
  return {
      c * c - beta * s2 / (2.0 * t),
      beta * sinc2,
      s * s - beta * (sinc2 - s2 / (2.0 * t)),
      -0.5 * s2 - beta * (c2 / (2.0 * t) - s2 / (4.0 * t * t)),
  };
}

Complex approx_offdiag_transverse(double beta, double omega0_t, Regime regime) {
  return approx_offdiag_general(beta, 0.0, omega0_t, regime);
}

double approx_ax_general(double beta_x, double beta_z, double omega0_t) {
  require_positive_phase(omega0_t);
  require_variance(beta_x, "beta_x");
  require_variance(beta_z, "beta_z");
  const double t = omega0_t;
  const double s = std::sin(t);
  const double t2 = t * t;
  const double curvature =
      (3.0 + (2.0 * t2 - 3.0) * std::cos(2.0 * t) - 4.0 * t * std::sin(2.0 * t)) /
      (2.0 * t2 * t2);
  return beta_x * s * s / t2 + beta_x * beta_z * curvature;
}

Complex approx_offdiag_general(double beta_x, double beta_z, double omega0_t,
                               Regime regime) {
  require_positive_phase(omega0_t);
  require_variance(beta_x, "beta_x");
  require_variance(beta_z, "beta_z");
  const double t = omega0_t;
  const double shift = beta_x / (2.0 * t * t);
  const Complex phase = unitary_phase(t);
  switch (regime) {
    case Regime::LargeQubitFrequency:
      return phase * (1.0 - 2.0 * beta_z) + shift;
    case Regime::SmallDampingRatio:
      return phase * Complex(1.0 - 2.0 * beta_z - shift, -beta_x / t) + shift;
  }
  return phase;
}

MapCoefficients approx_coefficients_general(double beta_x, double beta_z,
                                            double omega0_t) {
  const double a_x = approx_ax_general(beta_x, beta_z, omega0_t);
  const Complex k = approx_offdiag_general(beta_x, beta_z, omega0_t,
                                           Regime::SmallDampingRatio);
  const double keep = 1.0 - a_x;
  return {0.5 * (keep + k.real()), a_x, 0.5 * (keep - k.real()), 0.5 * k.imag()};
}

Complex exact_dephasing_offdiag(double beta_z, double omega0_t) {
  require_variance(beta_z, "beta_z");
  return std::exp(-2.0 * beta_z) * unitary_phase(omega0_t);
}

}  // namespace dephasim

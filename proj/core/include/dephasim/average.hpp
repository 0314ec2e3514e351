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

#include <cstddef>
#include <cstdint>

#include "dephasim/dynamics.hpp"

namespace dephasim {

/// Gaussian averaging problem: φ_x ~ N(0, β_x), φ_z ~ N(0, β_z) independent,
/// deterministic phase ω₀t. β_z = 0 is the pure-transverse case.
struct AverageProblem {
  double beta_x = 0.0;
  double beta_z = 0.0;
  double omega0_t = 0.0;

  void validate() const;
};

struct QuadratureSettings {
  std::size_t initial_nodes = 16;
  /// Convergence is declared when successive node doublings change every
  /// coefficient c by at most rel_tol · max(|c|, 1).
  double rel_tol = 1e-10;
  std::size_t max_nodes = std::size_t{1} << 14;

  void validate() const;
};

struct QuadratureReport {
  MapCoefficients coefficients;
  /// Node count per averaged axis of the accepted iterate.
  std::size_t nodes = 0;
  /// Largest scaled change between the last two iterates.
  double residual = 0.0;
};

/// Exact map coefficients by Gauss–Hermite quadrature with node doubling.
/// Throws ConvergenceError when max_nodes is reached without convergence or
/// if the unitarity sum deviates from one by more than 1e-9.
MapCoefficients coefficients_quadrature(const AverageProblem& p,
                                        const QuadratureSettings& q = {});
QuadratureReport coefficients_quadrature_report(const AverageProblem& p,
                                                const QuadratureSettings& q = {});

/// A_x of the pure-transverse problem; evaluates only f_x² on the
/// half-rule (the integrand is even in φ), with the same convergence rule
/// as coefficients_quadrature.
double ax_pure_transverse(double beta, double omega0_t, const QuadratureSettings& q = {});

struct MonteCarloEstimate {
  MapCoefficients mean;
  /// Standard error of each component of `mean`.
  MapCoefficients standard_error{0.0, 0.0, 0.0, 0.0};
  std::size_t samples = 0;
};

/// Monte Carlo estimate of the map coefficients. Samples are split into fixed
/// blocks, each drawn from its own derived stream and merged in block order,
/// so the result is bit-identical for any thread count.
MonteCarloEstimate coefficients_montecarlo(const AverageProblem& p, std::size_t samples,
                                           std::uint64_t seed, unsigned threads = 1);

}  // namespace dephasim

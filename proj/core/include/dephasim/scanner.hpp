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
#include <string>
#include <vector>

#include "dephasim/average.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/kernels.hpp"

namespace dephasim {

/// `count` log-spaced values between min and max inclusive.
struct LogGrid {
  std::size_t count = 40;
  double min = 1e-2;
  double max = 1e2;

  void validate(const char* name) const;
  std::vector<double> values() const;
};

struct ScanConfig {
  /// Only the kind and the power-law exponent are used; R_Γ comes from the grid.
  NoiseKernel kernel = NoiseKernel::ornstein_uhlenbeck(1.0, 1.0);
  LogGrid r_omega;
  LogGrid r_gamma;
  double tau_max = 50.0;
  /// Coarse τ samples per unit rescaled time.
  double tau_density = 20.0;
  double threshold = 1e-3;
  bool refine = true;
  QuadratureSettings quadrature;
  unsigned threads = 1;

  void validate() const;
};

struct TimeMaximum {
  double max_ax = 0.0;
  double argmax_tau = 0.0;
  /// The coarse maximizer was the last grid time, so the true maximum may lie
  /// beyond tau_max.
  bool boundary = false;
};

/// Thrown when A_x cannot be evaluated at some τ during the maximization.
class TimeMaximizationError : public ConvergenceError {
 public:
  TimeMaximizationError(const ConvergenceError& cause, double tau);
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// sin²(R_ω τ) oscillates with period π/R_ω in τ; the coarse grid keeps at
/// least this many samples per period.
inline constexpr double kSamplesPerOscillation = 8.0;

/// max(density, kSamplesPerOscillation · R_ω/π).
double effective_tau_density(double density, double r_omega);

/// Uniform coarse grid τ_k = k/density, k = 1..K, with τ_K = tau_max.
std::vector<double> coarse_tau_grid(double tau_max, double density);

/// max over τ ∈ (0, tau_max] of A_x(β(τ), R_ω τ) for a transverse field,
/// coarse grid (at effective_tau_density) followed by optional golden-section refinement of the
/// bracketing interval to relative τ resolution 1e-4.
TimeMaximum max_ax_over_time(const NoiseKernel& kernel, const RatioPair& ratios,
                             double tau_max = 50.0, double density = 20.0,
                             bool refine = true, const QuadratureSettings& q = {});

struct RegionPoint {
  double r_omega = 0.0;
  double r_gamma = 0.0;
  TimeMaximum maximum;
  bool below_threshold = false;
  /// Non-empty when the point could not be evaluated.
  std::string error;

  bool failed() const noexcept { return !error.empty(); }
};

struct RegionGrid {
  std::size_t omega_count = 0;
  std::size_t gamma_count = 0;
  double threshold = 0.0;
  /// Row-major in (r_omega index, r_gamma index).
  std::vector<RegionPoint> points;

  const RegionPoint& at(std::size_t omega_index, std::size_t gamma_index) const {
    return points.at(omega_index * gamma_count + gamma_index);
  }
};

RegionGrid scan_plane(const ScanConfig& config);

}  // namespace dephasim

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
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dephasim/rng.hpp"

namespace dephasim {

enum class KernelKind { OrnsteinUhlenbeck, Gaussian, PowerLaw };

std::string_view to_string(KernelKind kind) noexcept;

/// Stationary autocorrelation K(t - t') of a zero-mean Gaussian field.
///
///   OrnsteinUhlenbeck  K = Γγ/2 · exp(-γ|s|)
///   Gaussian           K = Γγ/√π · exp(-γ²s²)
///   PowerLaw           K = (α-1)γΓ/2 · (γ|s| + 1)^(-α),  α > 2
///
/// γ is the memory rate and Γ the damping; both are inverse times. Invalid
/// parameters are rejected at construction with ParameterError.
class NoiseKernel {
 public:
  static NoiseKernel ornstein_uhlenbeck(double gamma, double damping);
  static NoiseKernel gaussian(double gamma, double damping);
  static NoiseKernel power_law(double gamma, double damping, double alpha);
  static NoiseKernel make(KernelKind kind, double gamma, double damping,
                          double alpha = 4.0);

  KernelKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  double damping() const noexcept { return damping_; }
  /// Power-law exponent; meaningless for the other kinds.
  double alpha() const noexcept { return alpha_; }
  /// R_Γ = Γ/γ.
  double r_gamma() const noexcept { return damping_ / gamma_; }

  /// Same family in rescaled units: γ = 1, Γ = r_gamma.
  NoiseKernel rescaled(double r_gamma) const;

  friend bool operator==(const NoiseKernel&, const NoiseKernel&) = default;

 private:
  NoiseKernel(KernelKind kind, double gamma, double damping, double alpha);

  KernelKind kind_;
  double gamma_;
  double damping_;
  double alpha_;
};

/// Rescaled dimensionless time τ = γt, τ ≥ 0.
class ScaledTime {
 public:
  explicit ScaledTime(double tau);
  double value() const noexcept { return tau_; }

 private:
  double tau_;
};

/// Dimensionless ratios R_ω = ω₀/γ ≥ 0 and R_Γ = Γ/γ > 0.
struct RatioPair {
  double r_omega;
  double r_gamma;

  void validate() const;
};

double kernel_value(const NoiseKernel& kernel, double lag);

/// Closed-form variance of the noise phase, β = R_Γ · g(τ). Only the kind
/// and exponent of `kernel` enter; rates are supplied through r_gamma.
double beta(const NoiseKernel& kernel, ScaledTime tau, double r_gamma);

/// β from the kernel's own rates: τ expressed in units of 1/γ, R_Γ = Γ/γ.
inline double beta(const NoiseKernel& kernel, ScaledTime tau) {
  return beta(kernel, tau, kernel.r_gamma());
}

/// g(τ) such that β = R_Γ g(τ).
double variance_shape(const NoiseKernel& kernel, double tau);

/// β by adaptive quadrature of ∫₀^τ∫₀^τ K(s - s') ds ds' using the rescaled
/// kernel. Throws ConvergenceError when abs_tol is not reached.
double beta_numeric(const NoiseKernel& kernel, ScaledTime tau, double r_gamma,
                    double abs_tol = 1e-10);

enum class PhaseSampler { Direct, Path };

struct PathOptions {
  /// Upper bound on the rescaled grid step γΔt.
  double max_step = 0.01;
  double initial_jitter = 1e-12;
  double max_jitter = 1e-8;
};

/// Draws of φ(τ) = ∫₀^τ B(s) ds by discretizing the field on a uniform grid,
/// factorizing its covariance and integrating each path by the trapezoid
/// rule.
class PathPhaseSampler {
 public:
  PathPhaseSampler(const NoiseKernel& kernel, ScaledTime tau, double r_gamma,
                   std::size_t grid_points);
  PathPhaseSampler(const NoiseKernel& kernel, ScaledTime tau, double r_gamma,
                   const PathOptions& options = {});

  std::size_t grid_points() const noexcept { return times_.size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  /// Diagonal regularization that was needed for the factorization.
  double jitter() const noexcept { return jitter_; }

  /// Exact variance of the trapezoid functional under the discretized
  /// covariance, wᵀCw. Differs from β only by discretization error.
  double discretized_variance() const;

  /// One field path on the grid.
  Eigen::VectorXd draw_path(Engine& engine) const;
  double draw(Engine& engine) const;

 private:
  void build(const NoiseKernel& kernel, double tau, double r_gamma,
             std::size_t grid_points, const PathOptions& options);

  std::vector<double> times_;
  Eigen::VectorXd trapezoid_weights_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd factor_;
  double jitter_ = 0.0;
};

/// `count` independent draws of φ(τ). Deterministic in seed; PATH draws use
/// one derived stream per fixed-size block so the result does not depend on
/// any scheduling.
std::vector<double> sample_phase(const NoiseKernel& kernel, ScaledTime tau,
                                 double r_gamma, std::uint64_t seed,
                                 std::size_t count,
                                 PhaseSampler sampler = PhaseSampler::Direct,
                                 const PathOptions& options = {});

}  // namespace dephasim

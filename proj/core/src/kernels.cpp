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

#include "dephasim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dephasim/errors.hpp"

namespace dephasim {
namespace {

// Sum of 31-point Kronrod rules over panels of width <= 0.5 on [0, b]. The
// per-panel error is |K31 - G15|, accumulated into `error`.
template <class F>
double composite_gauss_kronrod(F f, double b, double& error) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  if (b == 0.0) return 0.0;
  const auto panels = static_cast<std::size_t>(std::ceil(b / 0.5));
  const double width = b / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = width * static_cast<double>(i);
    const double hi = i + 1 == panels ? b : lo + width;
    const double kronrod = gauss_kronrod<double, 31>::integrate(f, lo, hi, 0);
    const double gauss_value = gauss<double, 15>::integrate(f, lo, hi);
    sum += kronrod;
    error += std::abs(kronrod - gauss_value);
  }
  return sum;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be finite and > 0, got " << v;
    throw ParameterError(os.str());
  }
}

constexpr std::size_t kSampleBlock = 4096;

}  // namespace

std::string_view to_string(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::OrnsteinUhlenbeck: return "ou";
    case KernelKind::Gaussian: return "gaussian";
    case KernelKind::PowerLaw: return "power-law";
  }
  return "unknown";
}

NoiseKernel::NoiseKernel(KernelKind kind, double gamma, double damping, double alpha)
    : kind_(kind), gamma_(gamma), damping_(damping), alpha_(alpha) {
  require_positive(gamma, "gamma");
  require_positive(damping, "damping");
  if (kind == KernelKind::PowerLaw && !(alpha > 2.0 && std::isfinite(alpha))) {
    std::ostringstream os;
    os << "power-law exponent must satisfy alpha > 2, got " << alpha;
    throw ParameterError(os.str());
  }
}

NoiseKernel NoiseKernel::ornstein_uhlenbeck(double gamma, double damping) {
  return {KernelKind::OrnsteinUhlenbeck, gamma, damping, 0.0};
}

NoiseKernel NoiseKernel::gaussian(double gamma, double damping) {
  return {KernelKind::Gaussian, gamma, damping, 0.0};
}

NoiseKernel NoiseKernel::power_law(double gamma, double damping, double alpha) {
  return {KernelKind::PowerLaw, gamma, damping, alpha};
}

NoiseKernel NoiseKernel::make(KernelKind kind, double gamma, double damping,
                              double alpha) {
  return {kind, gamma, damping, kind == KernelKind::PowerLaw ? alpha : 0.0};
}

NoiseKernel NoiseKernel::rescaled(double r_gamma) const {
  return {kind_, 1.0, r_gamma, alpha_};
}

ScaledTime::ScaledTime(double tau) : tau_(tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    std::ostringstream os;
    os << "rescaled time must be finite and >= 0, got " << tau;
    throw ParameterError(os.str());
  }
}

void RatioPair::validate() const {
  if (!(r_omega >= 0.0) || !std::isfinite(r_omega)) {
    throw ParameterError("r_omega must be finite and >= 0");
  }
  require_positive(r_gamma, "r_gamma");
}

double kernel_value(const NoiseKernel& kernel, double lag) {
  const double g = kernel.gamma();
  const double amplitude = kernel.damping() * g;
  const double s = std::abs(lag);
  switch (kernel.kind()) {
    case KernelKind::OrnsteinUhlenbeck:
      return 0.5 * amplitude * std::exp(-g * s);
    case KernelKind::Gaussian:
      return amplitude * std::numbers::inv_sqrtpi * std::exp(-g * g * s * s);
    case KernelKind::PowerLaw:
      return 0.5 * (kernel.alpha() - 1.0) * amplitude *
             std::pow(g * s + 1.0, -kernel.alpha());
  }
  return 0.0;
}

double variance_shape(const NoiseKernel& kernel, double tau) {
  switch (kernel.kind()) {
    case KernelKind::OrnsteinUhlenbeck:
      // τ - 1 + e^{-τ} loses everything to cancellation for small τ.
      return tau < 1e-3 ? tau * tau * (0.5 - tau / 6.0 + tau * tau / 24.0)
                        : tau + std::expm1(-tau);
    case KernelKind::Gaussian:
      if (tau < 1e-3) {
        const double t2 = tau * tau;
        return std::numbers::inv_sqrtpi * t2 * (1.0 - t2 / 6.0);
      }
      return std::numbers::inv_sqrtpi *
             (std::expm1(-tau * tau) + std::sqrt(std::numbers::pi) * tau * std::erf(tau));
    case KernelKind::PowerLaw: {
      const double a = kernel.alpha();
      if (tau < 1e-3) {
        // Closed form cancels to O(τ²); use the Taylor series of 2∫(τ-u)K(u)du.
        const double t2 = tau * tau;
        return (a - 1.0) * t2 *
               (0.5 - tau * a / 6.0 +
                t2 * a * (a + 1.0) / 24.0 * (1.0 - tau * (a + 2.0) / 5.0));
      }
      // [(1+τ)² + (1+τ)^α (τ(α-2) - 1)] / [(1+τ)^α (α-2)]
      return (tau * (a - 2.0) + std::expm1((2.0 - a) * std::log1p(tau))) / (a - 2.0);
    }
  }
  return 0.0;
}

double beta(const NoiseKernel& kernel, ScaledTime tau, double r_gamma) {
  require_positive(r_gamma, "r_gamma");
  if (tau.value() == 0.0) return 0.0;
  return r_gamma * variance_shape(kernel, tau.value());
}

double beta_numeric(const NoiseKernel& kernel, ScaledTime tau, double r_gamma,
                    double abs_tol) {
  require_positive(r_gamma, "r_gamma");
  require_positive(abs_tol, "abs_tol");
  const double t = tau.value();
  if (t == 0.0) return 0.0;

  const NoiseKernel k = kernel.rescaled(r_gamma);

  // Integrate over the triangle s' < s and double. Inner variable is the lag.
  double inner_error = 0.0;
  auto inner = [&](double s) {
    return composite_gauss_kronrod([&](double u) { return kernel_value(k, u); }, s,
                                   inner_error);
  };
  double outer_error = 0.0;
  double max_inner_error = 0.0;
  const double half = composite_gauss_kronrod(
      [&](double s) {
        inner_error = 0.0;
        const double v = inner(s);
        max_inner_error = std::max(max_inner_error, inner_error);
        return v;
      },
      t, outer_error);
  inner_error = max_inner_error;
  const double value = 2.0 * half;
  const double residual = 2.0 * (outer_error + inner_error * t);
  if (!(residual <= abs_tol) || !std::isfinite(value)) {
    std::ostringstream os;
    os << "beta_numeric did not reach abs tolerance " << abs_tol << " at tau=" << t
       << " (residual " << residual << ")";
    throw ConvergenceError(os.str(), residual);
  }
  return value;
}

PathPhaseSampler::PathPhaseSampler(const NoiseKernel& kernel, ScaledTime tau,
                                   double r_gamma, std::size_t grid_points) {
  if (grid_points < 2) throw ParameterError("path sampler needs at least 2 grid points");
  build(kernel, tau.value(), r_gamma, grid_points, PathOptions{});
}

PathPhaseSampler::PathPhaseSampler(const NoiseKernel& kernel, ScaledTime tau,
                                   double r_gamma, const PathOptions& options) {
  require_positive(options.max_step, "max_step");
  const auto steps =
      static_cast<std::size_t>(std::ceil(tau.value() / options.max_step - 1e-12));
  build(kernel, tau.value(), r_gamma, std::max<std::size_t>(steps, 1) + 1, options);
}

void PathPhaseSampler::build(const NoiseKernel& kernel, double tau, double r_gamma,
                             std::size_t n, const PathOptions& options) {
  require_positive(r_gamma, "r_gamma");
  const NoiseKernel k = kernel.rescaled(r_gamma);
  const double h = tau / static_cast<double>(n - 1);

  times_.resize(n);
  for (std::size_t i = 0; i < n; ++i) times_[i] = h * static_cast<double>(i);

  trapezoid_weights_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), h);
  trapezoid_weights_(0) *= 0.5;
  trapezoid_weights_(static_cast<Eigen::Index>(n - 1)) *= 0.5;

  const auto dim = static_cast<Eigen::Index>(n);
  covariance_.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = kernel_value(k, times_[static_cast<std::size_t>(i)] -
                                           times_[static_cast<std::size_t>(j)]);
      covariance_(i, j) = v;
      covariance_(j, i) = v;
    }
  }

  if (tau == 0.0) {
    factor_ = Eigen::MatrixXd::Zero(dim, dim);
    return;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(covariance_);
  double jitter = 0.0;
  double next = options.initial_jitter;
  while (llt.info() != Eigen::Success) {
    if (next > options.max_jitter) {
      std::ostringstream os;
      os << "discretized covariance is not positive definite even with diagonal jitter "
         << jitter;
      throw ConvergenceError(os.str(), jitter);
    }
    jitter = next;
    Eigen::MatrixXd repaired = covariance_;
    repaired.diagonal().array() += jitter;
    llt.compute(repaired);
    next *= 10.0;
  }
  jitter_ = jitter;
  factor_ = llt.matrixL();
}

double PathPhaseSampler::discretized_variance() const {
  return trapezoid_weights_.dot(covariance_ * trapezoid_weights_);
}

Eigen::VectorXd PathPhaseSampler::draw_path(Engine& engine) const {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(factor_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(engine);
  return factor_.triangularView<Eigen::Lower>() * z;
}

double PathPhaseSampler::draw(Engine& engine) const {
  return trapezoid_weights_.dot(draw_path(engine));
}

std::vector<double> sample_phase(const NoiseKernel& kernel, ScaledTime tau,
                                 double r_gamma, std::uint64_t seed, std::size_t count,
                                 PhaseSampler sampler, const PathOptions& options) {
  if (count < 1) throw ParameterError("sample count must be >= 1");
  std::vector<double> out(count, 0.0);
  if (tau.value() == 0.0) return out;

  if (sampler == PhaseSampler::Direct) {
    const double sd = std::sqrt(beta(kernel, tau, r_gamma));
    for (std::size_t block = 0; block * kSampleBlock < count; ++block) {
      Engine engine = make_engine(seed, block);
      std::normal_distribution<double> normal(0.0, sd);
      const std::size_t end = std::min(count, (block + 1) * kSampleBlock);
      for (std::size_t i = block * kSampleBlock; i < end; ++i) out[i] = normal(engine);
    }
    return out;
  }

  const PathPhaseSampler path(kernel, tau, r_gamma, options);
  for (std::size_t block = 0; block * kSampleBlock < count; ++block) {
    Engine engine = make_engine(seed, block);
    const std::size_t end = std::min(count, (block + 1) * kSampleBlock);
    for (std::size_t i = block * kSampleBlock; i < end; ++i) out[i] = path.draw(engine);
  }
  return out;
}

}  // namespace dephasim

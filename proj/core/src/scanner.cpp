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

#include "dephasim/scanner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dephasim/optimize.hpp"
#include "dephasim/parallel.hpp"

namespace dephasim {
namespace {

std::string with_tau(const ConvergenceError& cause, double tau) {
  std::ostringstream os;
  os << cause.what() << " [at tau=" << tau << "]";
  return os.str();
}

}  // namespace

TimeMaximizationError::TimeMaximizationError(const ConvergenceError& cause, double tau)
    : ConvergenceError(with_tau(cause, tau), cause.residual(), cause.previous_iterate(),
                       cause.last_iterate()),
      tau_(tau) {}

void LogGrid::validate(const char* name) const {
  std::ostringstream os;
  if (count < 1) {
    os << name << " grid must have at least one point";
  } else if (!(min > 0.0) || !(max >= min) || !std::isfinite(max)) {
    os << name << " grid needs 0 < min <= max, got [" << min << ", " << max << "]";
  } else {
    return;
  }
  throw ParameterError(os.str());
}

std::vector<double> LogGrid::values() const {
  std::vector<double> out(count, min);
  if (count == 1 || min == max) return out;
  const double lo = std::log(min);
  const double step = (std::log(max) - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 1; i + 1 < count; ++i) {
    out[i] = std::exp(lo + step * static_cast<double>(i));
  }
  out.back() = max;
  return out;
}

void ScanConfig::validate() const {
  r_omega.validate("r_omega");
  r_gamma.validate("r_gamma");
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ParameterError("tau_max must be > 0");
  if (!(tau_density > 0.0)) throw ParameterError("tau density must be > 0");
  if (!(threshold > 0.0)) throw ParameterError("threshold must be > 0");
  quadrature.validate();
}

double effective_tau_density(double density, double r_omega) {
  return std::max(density, kSamplesPerOscillation * r_omega / std::numbers::pi);
}

std::vector<double> coarse_tau_grid(double tau_max, double density) {
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ParameterError("tau_max must be > 0");
  if (!(density > 0.0)) throw ParameterError("tau density must be > 0");
  const auto k = static_cast<std::size_t>(std::ceil(tau_max * density - 1e-9));
  std::vector<double> taus(std::max<std::size_t>(k, 1));
  for (std::size_t i = 0; i < taus.size(); ++i) {
    taus[i] = std::min(static_cast<double>(i + 1) / density, tau_max);
  }
  taus.back() = tau_max;
  return taus;
}

TimeMaximum max_ax_over_time(const NoiseKernel& kernel, const RatioPair& ratios,
                             double tau_max, double density, bool refine,
                             const QuadratureSettings& q) {
  ratios.validate();
  const std::vector<double> taus =
      coarse_tau_grid(tau_max, effective_tau_density(density, ratios.r_omega));

  auto ax_at = [&](double tau) {
    try {
      const double b = beta(kernel, ScaledTime(tau), ratios.r_gamma);
      return std::abs(ax_pure_transverse(b, ratios.r_omega * tau, q));
    } catch (const ConvergenceError& e) {
      throw TimeMaximizationError(e, tau);
    }
  };

  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double v = ax_at(taus[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  TimeMaximum out{best_value, taus[best], best + 1 == taus.size()};
  if (refine) {
    const double lo = best == 0 ? 0.0 : taus[best - 1];
    const double hi = best + 1 < taus.size() ? taus[best + 1] : taus[best];
    if (hi > lo) {
      const ScalarMaximum m = golden_section_maximize(ax_at, lo, hi, 1e-4);
      if (m.value > out.max_ax && m.x > 0.0) {
        out.max_ax = m.value;
        out.argmax_tau = m.x;
      }
    }
  }
  return out;
}

RegionGrid scan_plane(const ScanConfig& config) {
  config.validate();
  const std::vector<double> omegas = config.r_omega.values();
  const std::vector<double> gammas = config.r_gamma.values();

  RegionGrid grid;
  grid.omega_count = omegas.size();
  grid.gamma_count = gammas.size();
  grid.threshold = config.threshold;
  grid.points.resize(omegas.size() * gammas.size());

  parallel_for(grid.points.size(), config.threads, [&](std::size_t idx) {
    RegionPoint& point = grid.points[idx];
    point.r_omega = omegas[idx / gammas.size()];
    point.r_gamma = gammas[idx % gammas.size()];
    try {
      point.maximum = max_ax_over_time(config.kernel, {point.r_omega, point.r_gamma},
                                       config.tau_max, config.tau_density, config.refine,
                                       config.quadrature);
      point.below_threshold = point.maximum.max_ax < config.threshold;
    } catch (const std::exception& e) {
      point.error = e.what();
      point.maximum = {std::nan(""), std::nan(""), false};
      point.below_threshold = false;
    }
  });
  return grid;
}

}  // namespace dephasim

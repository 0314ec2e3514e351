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

#include "dephasim/average.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "dephasim/errors.hpp"
#include "dephasim/gauss_hermite.hpp"
#include "dephasim/parallel.hpp"
#include "dephasim/rng.hpp"

namespace dephasim {
namespace {

using Quad = std::array<double, 4>;

MapCoefficients from_quad(const Quad& q) { return {q[0], q[1], q[2], q[3]}; }

struct AxisPoint {
  double phi;
  double weight;  // includes the 1/√π normalization
};

// Quadrature points for φ ~ N(0, β) with φ = √(2β) u. A zero variance is a
// point mass at the origin. `even` folds the mirrored nodes together.
std::vector<AxisPoint> axis_points(double beta, std::size_t n, bool even) {
  if (beta == 0.0) return {{0.0, 1.0}};
  const GaussHermiteRule& rule = gauss_hermite_rule(n);
  const double scale = std::sqrt(2.0 * beta);
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  std::vector<AxisPoint> out;
  out.reserve(even ? nodes.size() : 2 * nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double w = weights[i] * std::numbers::inv_sqrtpi;
    if (nodes[i] == 0.0) {
      out.push_back({0.0, w});
    } else if (even) {
      out.push_back({scale * nodes[i], 2.0 * w});
    } else {
      out.push_back({scale * nodes[i], w});
      out.push_back({-scale * nodes[i], w});
    }
  }
  return out;
}

// Smallest node count that resolves the cos(2φ) content of the integrand
// after the substitution φ = √(2β) u: the rule behaves like a trapezoid rule
// with spacing π/√(2n) near the origin.
std::size_t resolution_hint(double beta) {
  const double omega = std::sqrt(2.0 * beta) + 6.0;
  return static_cast<std::size_t>(std::ceil(omega * omega / 4.0));
}

std::size_t starting_nodes(const QuadratureSettings& q, double beta_max) {
  std::size_t n = q.initial_nodes;
  const std::size_t hint = resolution_hint(beta_max);
  while (n < hint && 2 * n <= q.max_nodes / 2) n *= 2;
  return n;
}

Quad integrate_coefficients(const AverageProblem& p, std::size_t n) {
  // f-products are even in φ_x, so only the non-negative half is needed there.
  const auto xs = axis_points(p.beta_x, n, true);
  const auto zs = axis_points(p.beta_z, n, false);
  Quad sum{0.0, 0.0, 0.0, 0.0};
  for (const AxisPoint& z : zs) {
    Quad row{0.0, 0.0, 0.0, 0.0};
    for (const AxisPoint& x : xs) {
      const auto f = f_coefficients({x.phi, z.phi, p.omega0_t});
      row[0] += x.weight * f.f_i * f.f_i;
      row[1] += x.weight * f.f_x * f.f_x;
      row[2] += x.weight * f.f_z * f.f_z;
      row[3] += x.weight * f.f_i * f.f_z;
    }
    for (std::size_t k = 0; k < 4; ++k) sum[k] += z.weight * row[k];
  }
  return sum;
}

double integrate_ax(double beta, double omega0_t, std::size_t n) {
  double sum = 0.0;
  for (const AxisPoint& x : axis_points(beta, n, true)) {
    const double s = sinc(std::hypot(x.phi, omega0_t));
    const double fx = x.phi * s;
    sum += x.weight * fx * fx;
  }
  return sum;
}

double scaled_change(const Quad& a, const Quad& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(std::abs(b[k]), 1.0));
  }
  return worst;
}

[[noreturn]] void throw_nonconvergence(const AverageProblem& p, std::size_t n,
                                       double residual, const Quad& prev, const Quad& last) {
  std::ostringstream os;
  os << "Gauss-Hermite quadrature did not converge at " << n << " nodes (beta_x="
     << p.beta_x << ", beta_z=" << p.beta_z << ", omega0_t=" << p.omega0_t
     << ", residual " << residual << ")";
  throw ConvergenceError(os.str(), residual, {prev.begin(), prev.end()},
                         {last.begin(), last.end()});
}

struct Welford {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    count += 1.0;
    const double delta = v - mean;
    mean += delta / count;
    m2 += delta * (v - mean);
  }
  void merge(const Welford& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * (o.count / total);
    m2 += o.m2 + delta * delta * (count * o.count / total);
    count = total;
  }
  double standard_error() const {
    return count > 1.0 ? std::sqrt(m2 / (count - 1.0) / count) : 0.0;
  }
};

constexpr std::size_t kMonteCarloBlock = std::size_t{1} << 16;

}  // namespace

void AverageProblem::validate() const {
  auto bad = [](double v) { return !(v >= 0.0) || !std::isfinite(v); };
  if (bad(beta_x) || bad(beta_z) || bad(omega0_t)) {
    std::ostringstream os;
    os << "average problem requires finite beta_x, beta_z, omega0_t >= 0, got ("
       << beta_x << ", " << beta_z << ", " << omega0_t << ")";
    throw ParameterError(os.str());
  }
}

void QuadratureSettings::validate() const {
  if (initial_nodes < 8) throw ParameterError("initial node count must be >= 8");
  if (!(rel_tol > 0.0)) throw ParameterError("quadrature tolerance must be > 0");
  if (max_nodes < initial_nodes) throw ParameterError("max_nodes must be >= initial_nodes");
}

QuadratureReport coefficients_quadrature_report(const AverageProblem& p,
                                                const QuadratureSettings& q) {
  p.validate();
  q.validate();
  if (p.beta_x == 0.0 && p.beta_z == 0.0) {
    const auto f = f_coefficients({0.0, 0.0, p.omega0_t});
    return {{f.f_i * f.f_i, f.f_x * f.f_x, f.f_z * f.f_z, f.f_i * f.f_z}, 1, 0.0};
  }

  std::size_t n = starting_nodes(q, std::max(p.beta_x, p.beta_z));
  Quad prev = integrate_coefficients(p, n);
  for (;;) {
    if (2 * n > q.max_nodes) {
      throw_nonconvergence(p, n, std::numeric_limits<double>::infinity(), prev, prev);
    }
    n *= 2;
    const Quad next = integrate_coefficients(p, n);
    const double change = scaled_change(prev, next);
    if (change <= q.rel_tol) {
      MapCoefficients c = from_quad(next);
      const double drift = std::abs(c.unitarity_sum() - 1.0);
      if (drift > MapCoefficients::kSumTolerance) {
        std::ostringstream os;
        os << "quadrature coefficients violate the unitarity sum by " << drift;
        throw ConvergenceError(os.str(), drift, {prev.begin(), prev.end()},
                               {next.begin(), next.end()});
      }
      return {c, n, change};
    }
    if (2 * n > q.max_nodes) throw_nonconvergence(p, n, change, prev, next);
    prev = next;
  }
}

MapCoefficients coefficients_quadrature(const AverageProblem& p,
                                        const QuadratureSettings& q) {
  return coefficients_quadrature_report(p, q).coefficients;
}

double ax_pure_transverse(double beta, double omega0_t, const QuadratureSettings& q) {
  const AverageProblem p{beta, 0.0, omega0_t};
  p.validate();
  q.validate();
  if (beta == 0.0) return 0.0;

  std::size_t n = starting_nodes(q, beta);
  double prev = integrate_ax(beta, omega0_t, n);
  for (;;) {
    if (2 * n > q.max_nodes) {
      throw_nonconvergence(p, n, std::numeric_limits<double>::infinity(),
                           {0, prev, 0, 0}, {0, prev, 0, 0});
    }
    n *= 2;
    const double next = integrate_ax(beta, omega0_t, n);
    const double change = std::abs(next - prev) / std::max(std::abs(next), 1.0);
    if (change <= q.rel_tol) return next;
    if (2 * n > q.max_nodes) {
      throw_nonconvergence(p, n, change, {0, prev, 0, 0}, {0, next, 0, 0});
    }
    prev = next;
  }
}

MonteCarloEstimate coefficients_montecarlo(const AverageProblem& p, std::size_t samples,
                                           std::uint64_t seed, unsigned threads) {
  p.validate();
  if (samples < 100) throw ParameterError("Monte Carlo needs at least 100 samples");

  const double sd_x = std::sqrt(p.beta_x);
  const double sd_z = std::sqrt(p.beta_z);
  const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<std::array<Welford, 4>> partial(blocks);

  parallel_for(blocks, threads, [&](std::size_t b) {
    Engine engine = make_engine(seed, b);
    std::normal_distribution<double> normal;
    std::array<Welford, 4> acc{};
    const std::size_t end = std::min(samples, (b + 1) * kMonteCarloBlock);
    for (std::size_t i = b * kMonteCarloBlock; i < end; ++i) {
      const double phi_x = sd_x * normal(engine);
      const double phi_z = sd_z * normal(engine);
      const auto f = f_coefficients({phi_x, phi_z, p.omega0_t});
      acc[0].add(f.f_i * f.f_i);
      acc[1].add(f.f_x * f.f_x);
      acc[2].add(f.f_z * f.f_z);
      acc[3].add(f.f_i * f.f_z);
    }
    partial[b] = acc;
  });

  std::array<Welford, 4> total{};
  for (const auto& block : partial) {
    for (std::size_t k = 0; k < 4; ++k) total[k].merge(block[k]);
  }
  MonteCarloEstimate out;
  out.mean = {total[0].mean, total[1].mean, total[2].mean, total[3].mean};
  out.standard_error = {total[0].standard_error(), total[1].standard_error(),
                        total[2].standard_error(), total[3].standard_error()};
  out.samples = samples;
  return out;
}

}  // namespace dephasim

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

#include "dephasim/gauss_hermite.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dephasim/errors.hpp"

namespace dephasim {
namespace {

// Rules up to this order take their initial guesses from the Jacobi matrix
// eigenvalues; above it the WKB phase of the Hermite function is used, which
// is accurate away from the turning point √(2n+1), i.e. everywhere the
// weights survive the cutoff.
constexpr std::size_t kEigenGuessLimit = 512;
constexpr int kMaxNewton = 60;

struct Evaluation {
  double value;       // orthonormal p_n(x)
  double derivative;  // p_n'(x)
};

// Orthonormal Hermite polynomials w.r.t. e^{-x²}:
//   p_0 = π^{-1/4},  p_j = x √(2/j) p_{j-1} - √((j-1)/j) p_{j-2},
//   p_n' = √(2n) p_{n-1}.
Evaluation hermite_orthonormal(std::size_t n, double x) {
  double p_prev = 0.0;
  double p = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    const double next = x * std::sqrt(2.0 / jd) * p - std::sqrt((jd - 1.0) / jd) * p_prev;
    p_prev = p;
    p = next;
  }
  return {p, std::sqrt(2.0 * static_cast<double>(n)) * p_prev};
}

double polish(std::size_t n, double x, double& derivative) {
  for (int it = 0; it < kMaxNewton; ++it) {
    const Evaluation e = hermite_orthonormal(n, x);
    const double step = e.value / e.derivative;
    x -= step;
    derivative = e.derivative;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) {
      derivative = hermite_orthonormal(n, x).derivative;
      return x;
    }
  }
  std::ostringstream os;
  os << "Gauss-Hermite node polish did not converge for n=" << n << " near x=" << x;
  throw ConvergenceError(os.str(), std::abs(hermite_orthonormal(n, x).value));
}

std::vector<double> eigen_guesses(std::size_t n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd off(static_cast<Eigen::Index>(n - 1));
  for (std::size_t j = 1; j < n; ++j) {
    off(static_cast<Eigen::Index>(j - 1)) = std::sqrt(static_cast<double>(j) / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double x = solver.eigenvalues()(i);
    if (x >= -1e-14) out.push_back(std::max(0.0, x));
  }
  // Keep exactly ceil(n/2) non-negative roots.
  while (out.size() > (n + 1) / 2) out.erase(out.begin());
  if (n % 2 == 1) out.front() = 0.0;
  return out;
}

// Positive roots of cos(Θ(x)) with Θ the WKB phase
//   Θ(x) = (2n+1)/2 [asin s + s√(1-s²)] - nπ/2,  s = x/√(2n+1),
// taking guesses only while the corresponding weight may exceed the cutoff.
std::vector<double> wkb_guesses(std::size_t n) {
  const double m = 2.0 * static_cast<double>(n) + 1.0;
  const double rm = std::sqrt(m);
  auto phase = [&](double x) {
    const double s = x / rm;
    return 0.5 * m * (std::asin(s) + s * std::sqrt(1.0 - s * s));
  };
  std::vector<double> out;
  const double x_limit = std::min(std::sqrt(-std::log(GaussHermiteRule::kWeightCutoff)) + 2.0,
                                  0.5 * rm);
  const double offset = (n % 2 == 0) ? 0.5 : 0.0;
  for (std::size_t k = 0;; ++k) {
    const double target = (static_cast<double>(k) + offset) * std::numbers::pi;
    double x = target / rm;
    for (int it = 0; it < 50; ++it) {
      const double s = x / rm;
      const double step = (phase(x) - target) / (rm * std::sqrt(1.0 - s * s));
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    if (x > x_limit) break;
    out.push_back(x);
  }
  return out;
}

}  // namespace

GaussHermiteRule::GaussHermiteRule(std::size_t n) : order_(n) {
  if (n < 1) throw ParameterError("Gauss-Hermite order must be >= 1");
  const std::vector<double> guesses =
      n <= kEigenGuessLimit ? eigen_guesses(n) : wkb_guesses(n);

  double last = -1.0;
  for (const double guess : guesses) {
    double derivative = 0.0;
    const double x = (guess == 0.0 && n % 2 == 1) ? 0.0 : polish(n, guess, derivative);
    if (x == 0.0) derivative = hermite_orthonormal(n, 0.0).derivative;
    if (!(x > last)) {
      std::ostringstream os;
      os << "Gauss-Hermite nodes out of order for n=" << n << " (" << last << ", " << x << ")";
      throw ConvergenceError(os.str(), last - x);
    }
    last = x;
    const double w = 2.0 / (derivative * derivative);
    if (w < kWeightCutoff) break;
    nodes_.push_back(x);
    weights_.push_back(w);
  }
}

const GaussHermiteRule& gauss_hermite_rule(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(n);
  return *slot;
}

}  // namespace dephasim

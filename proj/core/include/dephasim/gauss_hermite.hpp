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
#include <span>
#include <vector>

namespace dephasim {

/// n-point Gauss–Hermite rule for ∫ g(u) e^{-u²} du, stored as its
/// non-negative half (the rule is symmetric). Nodes whose weight is below
/// kWeightCutoff are dropped; the integrands used here are bounded by one,
/// so the truncation error is below n·kWeightCutoff.
class GaussHermiteRule {
 public:
  static constexpr double kWeightCutoff = 1e-22;

  explicit GaussHermiteRule(std::size_t n);

  std::size_t order() const noexcept { return order_; }

  /// Nodes u ≥ 0 in increasing order; a node at exactly 0 (odd n) comes first.
  std::span<const double> nodes() const noexcept { return nodes_; }
  /// Weight of the node at +u (the mirrored node -u carries the same weight).
  std::span<const double> weights() const noexcept { return weights_; }
  bool has_zero_node() const noexcept { return order_ % 2 == 1; }

  /// Number of stored non-negative nodes after truncation.
  std::size_t stored() const noexcept { return nodes_.size(); }

  /// Σ over the full symmetric rule of g(u) w.
  template <typename G>
  double integrate(G&& g) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double u = nodes_[i];
      sum += weights_[i] * (u == 0.0 ? g(0.0) : g(u) + g(-u));
    }
    return sum;
  }

  /// Σ over the full rule for an even integrand, evaluating g once per pair.
  template <typename G>
  double integrate_even(G&& g) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double u = nodes_[i];
      sum += weights_[i] * (u == 0.0 ? 1.0 : 2.0) * g(u);
    }
    return sum;
  }

 private:
  std::size_t order_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Process-wide cache of rules; the returned reference stays valid for the
/// lifetime of the program. Thread-safe.
const GaussHermiteRule& gauss_hermite_rule(std::size_t n);

}  // namespace dephasim

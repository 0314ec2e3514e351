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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dephasim/average.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/optimize.hpp"
#include "dephasim/scanner.hpp"

using namespace dephasim;

namespace {

NoiseKernel unit_kernel(KernelKind kind) { return NoiseKernel::make(kind, 1.0, 1.0, 4.0); }

ScanConfig small_config(KernelKind kind, std::size_t count) {
  ScanConfig cfg;
  cfg.kernel = unit_kernel(kind);
  cfg.r_omega = {count, 1e-2, 1e2};
  cfg.r_gamma = {count, 1e-2, 1e2};
  return cfg;
}

}  // namespace

TEST_CASE("golden-section maximization") {
  const ScalarMaximum m = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); },
                                                  0.0, 1.0);
  CHECK(m.x == doctest::Approx(0.3).epsilon(1e-4));
  CHECK(m.value <= 0.0);
  CHECK(m.evaluations > 0);
  const ScalarMaximum s = golden_section_maximize([](double x) { return std::sin(x); }, 1.0, 2.5,
                                                  1e-8);
  CHECK(s.x == doctest::Approx(std::numbers::pi / 2).epsilon(1e-7));
  CHECK_THROWS_AS(golden_section_maximize([](double x) { return x; }, 2.0, 1.0), ParameterError);
}

TEST_CASE("log grids and coarse time grids") {
  const auto v = LogGrid{5, 1e-2, 1e2}.values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 1e-2);
  CHECK(v.back() == 1e2);
  CHECK(v[2] == doctest::Approx(1.0).epsilon(1e-15));
  const auto same = LogGrid{3, 2.0, 2.0}.values();
  CHECK(same == std::vector<double>{2.0, 2.0, 2.0});
  CHECK_THROWS_AS((LogGrid{0, 1.0, 2.0}.validate("g")), ParameterError);
  CHECK_THROWS_AS((LogGrid{3, 0.0, 2.0}.validate("g")), ParameterError);
  CHECK_THROWS_AS((LogGrid{3, 3.0, 2.0}.validate("g")), ParameterError);

  const auto taus = coarse_tau_grid(50.0, 20.0);
  CHECK(taus.size() == 1000);
  CHECK(taus.front() == 0.05);
  CHECK(taus.back() == 50.0);
  CHECK(effective_tau_density(20.0, 1.0) == 20.0);
  CHECK(effective_tau_density(20.0, 100.0) == doctest::Approx(800.0 / std::numbers::pi));
}

TEST_CASE("max over time with no qubit frequency saturates at one half") {
  const NoiseKernel ou = unit_kernel(KernelKind::OrnsteinUhlenbeck);
  const TimeMaximum m = max_ax_over_time(ou, {0.0, 10.0});
  // E[sin²φ] = ½(1 − e^{−2β}) is increasing in τ and within rounding of ½
  // once β exceeds ~20.
  CHECK(m.max_ax == doctest::Approx(0.5 * (1.0 - std::exp(-2.0 * 10.0 * 49.0))).epsilon(1e-10));
  const TimeMaximum weak = max_ax_over_time(ou, {0.0, 0.01});
  const double b50 = beta(ou, ScaledTime(50.0), 0.01);
  CHECK(weak.max_ax == doctest::Approx(0.5 * (1.0 - std::exp(-2.0 * b50))).epsilon(1e-10));
  CHECK(weak.argmax_tau == 50.0);
  CHECK(weak.boundary);
}

TEST_CASE("max over time in the weak-noise limit") {
  const NoiseKernel ou = unit_kernel(KernelKind::OrnsteinUhlenbeck);
  for (const double r_omega : {0.01, 1.0, 100.0}) {
    const TimeMaximum m = max_ax_over_time(ou, {r_omega, 1e-6});
    CHECK(m.max_ax < 1e-4);
    CHECK(m.max_ax >= 0.0);
    CHECK(m.argmax_tau > 0.0);
    CHECK(m.argmax_tau <= 50.0);
  }
  CHECK(max_ax_over_time(ou, {100.0, 0.01}).max_ax < 1e-3);
}

TEST_CASE("max over time scales linearly with small R_Gamma") {
  for (const KernelKind kind : {KernelKind::OrnsteinUhlenbeck, KernelKind::Gaussian,
                                KernelKind::PowerLaw}) {
    const NoiseKernel k = unit_kernel(kind);
    for (const double r_omega : {0.5, 2.0, 10.0}) {
      const double rg = 1e-3;
      // Second-order reference: R_Γ·max_τ g(τ) sin²(R_ωτ)/(R_ωτ)² on a dense grid.
      double reference = 0.0;
      for (int i = 1; i <= 200000; ++i) {
        const double tau = 50.0 * i / 200000.0;
        const double x = r_omega * tau;
        reference = std::max(reference, beta(k, ScaledTime(tau), rg) * std::pow(std::sin(x) / x, 2));
      }
      const TimeMaximum m = max_ax_over_time(k, {r_omega, rg});
      INFO(to_string(kind), " r_omega=", r_omega);
      CHECK(m.max_ax == doctest::Approx(reference).epsilon(0.05));
    }
  }
}

TEST_CASE("refinement never lowers the coarse maximum") {
  const NoiseKernel g = unit_kernel(KernelKind::Gaussian);
  for (const double r_omega : {0.3, 3.0, 30.0}) {
    const TimeMaximum coarse = max_ax_over_time(g, {r_omega, 1.0}, 50.0, 20.0, false);
    const TimeMaximum fine = max_ax_over_time(g, {r_omega, 1.0}, 50.0, 20.0, true);
    CHECK(fine.max_ax >= coarse.max_ax);
    CHECK(fine.max_ax <= coarse.max_ax * (1.0 + 1e-2));
  }
}

TEST_CASE("quadrature failures carry the offending time") {
  QuadratureSettings tight;
  tight.max_nodes = 16;
  try {
    (void)max_ax_over_time(unit_kernel(KernelKind::OrnsteinUhlenbeck), {1.0, 100.0}, 50.0, 20.0,
                           true, tight);
    FAIL("expected TimeMaximizationError");
  } catch (const TimeMaximizationError& e) {
    CHECK(e.tau() > 0.0);
    CHECK(e.tau() <= 50.0);
  }
}

TEST_CASE("single-point scans classify the corners") {
  ScanConfig cfg;
  cfg.r_omega = {1, 1e2, 1e2};
  cfg.r_gamma = {1, 1e-2, 1e-2};
  const RegionGrid below = scan_plane(cfg);
  REQUIRE(below.points.size() == 1);
  CHECK(below.points[0].below_threshold);
  CHECK_FALSE(below.points[0].failed());

  cfg.r_omega = {1, 1e-2, 1e-2};
  cfg.r_gamma = {1, 1e2, 1e2};
  const RegionGrid above = scan_plane(cfg);
  CHECK_FALSE(above.points[0].below_threshold);
}

TEST_CASE("degenerate grids give identical points") {
  ScanConfig cfg;
  cfg.r_omega = {3, 1.0, 1.0};
  cfg.r_gamma = {2, 0.5, 0.5};
  cfg.threads = 2;
  const RegionGrid grid = scan_plane(cfg);
  REQUIRE(grid.points.size() == 6);
  for (const RegionPoint& p : grid.points) {
    CHECK(p.maximum.max_ax == grid.points[0].maximum.max_ax);
    CHECK(p.maximum.argmax_tau == grid.points[0].maximum.argmax_tau);
  }
}

TEST_CASE("scan output is row-major and independent of the thread count") {
  ScanConfig cfg = small_config(KernelKind::PowerLaw, 5);
  cfg.threads = 1;
  const RegionGrid a = scan_plane(cfg);
  cfg.threads = 4;
  const RegionGrid b = scan_plane(cfg);
  const auto omegas = cfg.r_omega.values();
  const auto gammas = cfg.r_gamma.values();
  REQUIRE(a.points.size() == 25);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(a.at(i, j).r_omega == omegas[i]);
      CHECK(a.at(i, j).r_gamma == gammas[j]);
      CHECK(a.at(i, j).maximum.max_ax == b.at(i, j).maximum.max_ax);
      CHECK(a.at(i, j).maximum.argmax_tau == b.at(i, j).maximum.argmax_tau);
      CHECK(a.at(i, j).maximum.boundary == b.at(i, j).maximum.boundary);
    }
  }
}

TEST_CASE("classification is monotone in R_Gamma and boundary flags are genuine") {
  for (const KernelKind kind : {KernelKind::OrnsteinUhlenbeck, KernelKind::Gaussian,
                                KernelKind::PowerLaw}) {
    ScanConfig cfg = small_config(kind, 9);
    cfg.threads = 4;
    const RegionGrid grid = scan_plane(cfg);
    for (std::size_t i = 0; i < grid.omega_count; ++i) {
      bool seen_above = false;
      for (std::size_t j = 0; j < grid.gamma_count; ++j) {
        const RegionPoint& p = grid.at(i, j);
        REQUIRE_FALSE(p.failed());
        CHECK(p.maximum.max_ax >= 0.0);
        CHECK(p.maximum.argmax_tau > 0.0);
        CHECK(p.maximum.argmax_tau <= cfg.tau_max);
        // Going up in R_Γ, once above threshold never below again.
        if (seen_above) CHECK_FALSE(p.below_threshold);
        seen_above = seen_above || !p.below_threshold;
        if (p.maximum.boundary && kind != KernelKind::PowerLaw) {
          INFO(to_string(kind), " (", p.r_omega, ", ", p.r_gamma, ")");
          CHECK(p.r_omega < 0.1);
          // A flagged maximizer is truncated: a longer horizon finds a larger value.
          const TimeMaximum longer =
              max_ax_over_time(cfg.kernel, {p.r_omega, p.r_gamma}, 2.0 * cfg.tau_max);
          CHECK(longer.max_ax > p.maximum.max_ax);
        }
      }
    }
    CHECK(grid.at(grid.omega_count - 1, 0).below_threshold);
    CHECK_FALSE(grid.at(0, grid.gamma_count - 1).below_threshold);
  }
}

TEST_CASE("failed points become error markers without aborting the scan") {
  ScanConfig cfg;
  cfg.r_omega = {2, 1e-2, 1e2};
  cfg.r_gamma = {2, 1e-2, 1e2};
  cfg.quadrature.max_nodes = 16;
  const RegionGrid grid = scan_plane(cfg);
  REQUIRE(grid.points.size() == 4);
  bool any_failed = false;
  for (const RegionPoint& p : grid.points) {
    if (p.failed()) {
      any_failed = true;
      CHECK(std::isnan(p.maximum.max_ax));
      CHECK_FALSE(p.below_threshold);
    }
  }
  CHECK(any_failed);
}

TEST_CASE("scan configuration validation") {
  ScanConfig cfg;
  cfg.threshold = 0.0;
  CHECK_THROWS_AS(scan_plane(cfg), ParameterError);
  cfg = ScanConfig{};
  cfg.tau_max = -1.0;
  CHECK_THROWS_AS(scan_plane(cfg), ParameterError);
  cfg = ScanConfig{};
  cfg.r_gamma = {0, 1.0, 1.0};
  CHECK_THROWS_AS(scan_plane(cfg), ParameterError);
}

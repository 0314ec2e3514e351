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

#include <benchmark/benchmark.h>

#include "dephasim/average.hpp"
#include "dephasim/gauss_hermite.hpp"
#include "dephasim/kernels.hpp"
#include "dephasim/scanner.hpp"

using namespace dephasim;

static void BM_GaussHermiteRule(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    GaussHermiteRule rule(n);
    benchmark::DoNotOptimize(rule.weights().data());
  }
}
BENCHMARK(BM_GaussHermiteRule)->RangeMultiplier(4)->Range(16, 16384)->Unit(benchmark::kMicrosecond);

static void BM_AxPureTransverse(benchmark::State& state) {
  const double b = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(ax_pure_transverse(b, 3.0));
}
BENCHMARK(BM_AxPureTransverse)->Arg(1)->Arg(100)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_Quadrature2D(benchmark::State& state) {
  const double b = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(coefficients_quadrature({b, b, 5.0}));
}
BENCHMARK(BM_Quadrature2D)->Arg(1)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_MonteCarlo(benchmark::State& state) {
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coefficients_montecarlo({0.7, 0.3, 2.0}, 1000000, 1, threads));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_MaxAxOverTime(benchmark::State& state) {
  const NoiseKernel k = NoiseKernel::make(static_cast<KernelKind>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(max_ax_over_time(k, {1.0, 1.0}));
}
BENCHMARK(BM_MaxAxOverTime)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_PathSampler(benchmark::State& state) {
  const NoiseKernel ou = NoiseKernel::ornstein_uhlenbeck(1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_phase(ou, ScaledTime(2.0), 1.0, 3, 10000, PhaseSampler::Path));
  }
}
BENCHMARK(BM_PathSampler)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

// Copyright 2026 The nglab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "nglab/nglab.hpp"

namespace {

using namespace nglab;

void BM_Nongaussianity(benchmark::State& state) {
  const auto src = builtin_sources().at(static_cast<std::size_t>(state.range(0)));
  const ScalarChannel ch{src, Snr(1.0)};
  for (auto _ : state) benchmark::DoNotOptimize(nongaussianity(ch).value);
  state.SetLabel(src.name());
}
BENCHMARK(BM_Nongaussianity)->DenseRange(0, 4)->Unit(benchmark::kMicrosecond);

void BM_NongaussianityTight(benchmark::State& state) {
  const ScalarChannel ch{sources::uniform(), Snr(0.05)};
  for (auto _ : state) benchmark::DoNotOptimize(nongaussianity(ch, tight_quadrature()).value);
}
BENCHMARK(BM_NongaussianityTight)->Unit(benchmark::kMicrosecond);

void BM_Mmse(benchmark::State& state) {
  const ScalarChannel ch{sources::exponential(), Snr(2.0)};
  for (auto _ : state) benchmark::DoNotOptimize(mmse(ch).value);
}
BENCHMARK(BM_Mmse)->Unit(benchmark::kMicrosecond);

void BM_ToneDivergence(benchmark::State& state) {
  const auto law = state.range(0) == 0 ? AmplitudeLaw::unit() : AmplitudeLaw::random(sources::uniform());
  for (auto _ : state) benchmark::DoNotOptimize(tone_divergence(law, 1.0).value);
  state.SetLabel(law.name());
}
BENCHMARK(BM_ToneDivergence)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_KalmanErrors(benchmark::State& state) {
  const auto setup = KalmanSetup::make(static_cast<int>(state.range(0)), 2.0, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kalman_errors(setup).cmmse);
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_KalmanErrors)->Args({1, 4096})->Args({4, 4096})->Args({16, 4096})->Unit(benchmark::kMillisecond);

void BM_McScalarMmse(benchmark::State& state) {
  McConfig cfg;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  const auto src = sources::rademacher();
  for (auto _ : state) benchmark::DoNotOptimize(mc_scalar_mmse(src, 1.0, cfg).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McScalarMmse)->Arg(100'000)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();

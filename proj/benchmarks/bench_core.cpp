// Copyright 2026 The qrcsim Authors
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

#include "qrc/analysis.hpp"
#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/tasks.hpp"

namespace {

using namespace qrc;

ReservoirConfig default_config(int n) {
  ReservoirConfig cfg;
  cfg.mode_count = n;
  cfg.reflectivity = 0.75;
  cfg.squeeze_strength = 0.75;
  return cfg;
}

void BM_ComposeCrystal(benchmark::State& state) {
  Rng rng(1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_crystal(n, 1.0, rng));
  }
}
BENCHMARK(BM_ComposeCrystal)->Arg(8)->Arg(16);

void BM_LoopStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  SymplecticTransform s = draw_crystal(default_config(n), rng);
  LoopState loop = vacuum_loop_state(n);
  CovarianceState in = squeezed_vacuum_covariance({2.0, 0.3}, n);
  for (auto _ : state) {
    LoopStepResult step = loop_step(loop, in, 0.75, s);
    loop = step.state;
    benchmark::DoNotOptimize(step.emitted);
  }
}
BENCHMARK(BM_LoopStep)->Arg(8)->Arg(16);

void BM_PhysicalityCheck(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CovarianceState g = squeezed_vacuum_covariance({1.0, 0.4}, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_physical(g));
  }
}
BENCHMARK(BM_PhysicalityCheck)->Arg(8)->Arg(16);

void BM_ExtractObservables(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CovarianceState g = squeezed_vacuum_covariance({1.0, 0.4}, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_observables(g));
  }
}
BENCHMARK(BM_ExtractObservables)->Arg(8);

void BM_RunSequence(benchmark::State& state) {
  const int n = 8;
  const long len = state.range(0);
  ReservoirConfig cfg = default_config(n);
  Rng crystal_rng(3);
  SymplecticTransform s = draw_crystal(cfg, crystal_rng);
  Rng input_rng(4);
  Vec inputs = gen_uniform_inputs(len, input_rng);
  RunOptions opts;
  opts.validate_states = state.range(1) != 0;
  for (auto _ : state) {
    Rng rng(5);
    std::span<const double> view(inputs.data(), inputs.size());
    benchmark::DoNotOptimize(run_sequence(view, cfg, s, 1e-2, rng, opts));
  }
}
BENCHMARK(BM_RunSequence)->Args({1000, 0})->Args({1000, 1});

void BM_FitReadout(benchmark::State& state) {
  const long rows = state.range(0), cols = 101;
  Rng rng(6);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat design(rows, cols);
  for (long i = 0; i < rows; ++i) {
    design(i, 0) = 1.0;
    for (long j = 1; j < cols; ++j) design(i, j) = gauss(rng);
  }
  Vec target(rows);
  for (long i = 0; i < rows; ++i) target[i] = gauss(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_readout(design, target));
  }
}
BENCHMARK(BM_FitReadout)->Arg(4000);

void BM_MackeyGlass(benchmark::State& state) {
  MackeyGlassParams params;
  params.history = 1.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mackey_glass_series(params, state.range(0)));
  }
}
BENCHMARK(BM_MackeyGlass)->Arg(1000);

void BM_SpectralNormDecay(benchmark::State& state) {
  Rng rng(7);
  SymplecticTransform s = compose_crystal(8, 1.0, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_norm_decay(s, 0.5, 40));
  }
}
BENCHMARK(BM_SpectralNormDecay);

}  // namespace

BENCHMARK_MAIN();

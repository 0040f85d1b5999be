// Copyright 2026 The OptStream Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for the pipeline's hot paths. The period length is fixed
// at the evaluation profile's w = 48 unless a benchmark sweeps it.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "optstream/baselines.hpp"
#include "optstream/budget.hpp"
#include "optstream/features.hpp"
#include "optstream/noise.hpp"
#include "optstream/pipeline.hpp"
#include "optstream/postprocess.hpp"
#include "optstream/qp.hpp"
#include "optstream/sampling.hpp"
#include "optstream/synth.hpp"
#include "optstream/types.hpp"

namespace {

using namespace optstream;

std::vector<double> random_period(int w, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> level(0.0, 100.0);
  std::vector<double> x(w);
  for (double& v : x) v = level(gen);
  return x;
}

FeatureSet evaluation_features() {
  return make_feature_set(
      48, {feature_from_ranges({{1, 14}, {15, 24}, {25, 36}, {37, 48}}),
           feature_from_ranges({{1, 48}})});
}

void BM_LaplaceDraws(benchmark::State& state) {
  NoiseStream stream = NoiseSource::seeded(1).stream(0, "bench");
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.laplace(1.0));
  }
}
BENCHMARK(BM_LaplaceDraws);

void BM_AdaptiveSampler(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  const std::vector<double> x = random_period(w, 7);
  NoiseSource source = NoiseSource::seeded(2);
  std::uint64_t period = 0;
  for (auto _ : state) {
    NoiseStream stream = source.stream(period++, "sample");
    benchmark::DoNotOptimize(
        adaptive_l1_sample(x, w / 5 + 2, 0.33, 50.0, 1.0, stream));
  }
}
BENCHMARK(BM_AdaptiveSampler)->Arg(48)->Arg(96)->Arg(192);

void BM_Dft(benchmark::State& state) {
  const std::vector<double> x = random_period(48, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dft(x));
  }
}
BENCHMARK(BM_Dft);

void BM_QpSolve(benchmark::State& state) {
  const int w = 48;
  const FeatureSet features = evaluation_features();
  const std::vector<double> lambda = default_lambda(features);
  const std::vector<double> x = random_period(w, 13);
  std::mt19937_64 gen(17);
  std::normal_distribution<double> gauss(0.0, 20.0);
  std::vector<QpRow> rows;
  for (int i = 0; i < features.count(); ++i) {
    const auto& blocks = features.features[i].blocks;
    for (const auto& block : blocks) {
      QpRow row;
      double sum = 0.0;
      for (int t : block) {
        row.vars.push_back(t - 1);
        sum += x[t - 1];
      }
      row.weight = lambda[i];
      row.target = sum + gauss(gen);
      rows.push_back(std::move(row));
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_consistency_qp(w, rows));
  }
}
BENCHMARK(BM_QpSolve);

void BM_ReleasePeriod(benchmark::State& state) {
  NoiseStream synth_stream = NoiseSource::disabled().stream(0, "synth");
  const TimeSeries series = synth_load(default_load_profile(), 1,
                                       synth_stream);
  WPeriod period;
  period.values = series.values;
  period.origin = 0;
  period.index = 0;
  const PrivacyParams params =
      make_params(48, 1.0, 1.0, 1000.0, 10, SamplerKind::kAdaptiveL1);
  const FeatureSet features = evaluation_features();
  NoiseSource source = NoiseSource::seeded(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(release_period(period, params, features,
                                            source));
  }
}
BENCHMARK(BM_ReleasePeriod);

}  // namespace

BENCHMARK_MAIN();

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

#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "optstream/budget.hpp"
#include "optstream/error.hpp"
#include "optstream/features.hpp"
#include "optstream/noise.hpp"
#include "optstream/pipeline.hpp"
#include "optstream/sampling.hpp"
#include "optstream/types.hpp"

namespace optstream {
namespace {

using test::make_series;

FeatureSet small_features() {
  return make_feature_set(12, {feature_from_ranges({{1, 6}, {7, 12}})});
}

TEST_SUITE("pipeline") {

TEST_CASE("perturb noise variance follows the sequential-composition scale") {
  // |S| = 4, alpha = 1, eps_p = 1: Laplace scale 4, variance 2 * 16 = 32.
  NoiseStream s = NoiseSource::seeded(7).stream(1, "perturb4");
  std::vector<double> noise;
  noise.reserve(100000);
  for (int rep = 0; rep < 25000; ++rep) {
    std::vector<double> x(4, 0.0);
    for (double v : perturb(x, 1.0, 1.0, s)) noise.push_back(v);
  }
  CHECK(test::sample_variance(noise) == doctest::Approx(32.0).epsilon(0.05));
}

TEST_CASE("perturb validates and passes through when disabled") {
  std::vector<double> x{1.0, 2.0};
  NoiseStream s = NoiseSource::seeded(1).stream(0, "p");
  CHECK_THROWS_AS(perturb(x, 0.0, 1.0, s), InvalidParameterError);
  CHECK_THROWS_AS(perturb(x, 1.0, 0.0, s), InvalidParameterError);

  NoiseStream d = NoiseSource::disabled().stream(0, "p");
  CHECK(perturb(x, 1.0, 1.0, d) == x);
}

TEST_CASE("reconstruct interpolates and holds the tail") {
  SampleSet ends;
  ends.indices = {1, 3};
  CHECK(reconstruct(ends, std::vector<double>{0.0, 4.0}, 3) ==
        std::vector<double>{0.0, 2.0, 4.0});

  SampleSet both;
  both.indices = {1, 5};
  CHECK(reconstruct(both, std::vector<double>{0.0, 0.0}, 5) ==
        std::vector<double>(5, 0.0));

  // The last sampled value is held when w itself was not sampled.
  SampleSet front;
  front.indices = {1, 2};
  CHECK(reconstruct(front, std::vector<double>{1.0, 3.0}, 4) ==
        std::vector<double>{1.0, 3.0, 3.0, 3.0});
}

TEST_CASE("reconstruct is exact on piecewise-linear data") {
  SampleSet anchors = equally_spaced_sample(12, 4);
  REQUIRE(anchors.indices == std::vector<int>{1, 5, 8, 12});
  std::vector<double> knots{10.0, 40.0, 20.0, 35.0};
  std::vector<double> full = reconstruct(anchors, knots, 12);
  // Re-reading the anchor values out of the dense series and interpolating
  // again reproduces the series bit for bit.
  std::vector<double> again = reconstruct(anchors, knots, 12);
  CHECK(std::memcmp(full.data(), again.data(), sizeof(double) * 12) == 0);
  for (std::size_t i = 0; i < anchors.indices.size(); ++i) {
    CHECK(full[anchors.indices[i] - 1] == knots[i]);
  }
}

TEST_CASE("reconstruct validates the sample set") {
  SampleSet bad;
  bad.indices = {2, 3};
  CHECK_THROWS_AS(reconstruct(bad, std::vector<double>{1.0, 2.0}, 4),
                  InvalidParameterError);
  SampleSet ok;
  ok.indices = {1, 3};
  CHECK_THROWS_AS(reconstruct(ok, std::vector<double>{1.0}, 4),
                  InvalidParameterError);
}

TEST_CASE("noise-free equally spaced release recovers anchored data") {
  SampleSet anchors = equally_spaced_sample(12, 4);
  std::vector<double> knots{10.0, 40.0, 20.0, 35.0};
  WPeriod period;
  period.values = reconstruct(anchors, knots, 12);

  PrivacyParams params =
      make_params(12, 1.0, 1.0, 1000.0, 4, SamplerKind::kEquallySpaced);
  NoiseSource disabled = NoiseSource::disabled();

  ReleaseReport report =
      release_period(period, params, small_features(), disabled);
  CHECK(test::max_abs_diff(report.private_values, period.values) <= 1e-9);
  CHECK(report.samples.indices == anchors.indices);

  // With post-processing off the pipeline is the identity on such data.
  ReleaseOptions no_post;
  no_post.stages.post = false;
  ReleaseReport raw =
      release_period(period, params, small_features(), disabled, no_post);
  CHECK(std::memcmp(raw.private_values.data(), period.values.data(),
                    sizeof(double) * 12) == 0);
}

TEST_CASE("budget ledger accounts for every stage") {
  WPeriod period;
  period.values.assign(12, 20.0);

  PrivacyParams es =
      make_params(12, 1.0, 1.0, 1000.0, 4, SamplerKind::kEquallySpaced);
  NoiseSource source = NoiseSource::seeded(5);
  ReleaseReport r = release_period(period, es, small_features(), source);
  CHECK(r.budget.sample == 0.0);
  CHECK(r.budget.perturb == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.budget.post == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(r.budget.total() - es.epsilon) <= 1e-12);

  PrivacyParams ls =
      make_params(12, 1.0, 1.0, 1000.0, 4, SamplerKind::kAdaptiveL1);
  ReleaseReport r2 = release_period(period, ls, small_features(), source);
  CHECK(r2.budget.sample == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(std::fabs(r2.budget.total() - ls.epsilon) <= 1e-12);
}

TEST_CASE("disabled stages leave their budget unspent") {
  WPeriod period;
  period.values.assign(12, 20.0);
  PrivacyParams ls =
      make_params(12, 1.0, 1.0, 1000.0, 4, SamplerKind::kAdaptiveL1);
  NoiseSource source = NoiseSource::seeded(5);

  ReleaseOptions no_sampling;
  no_sampling.stages.sampling = false;
  ReleaseReport r =
      release_period(period, ls, small_features(), source, no_sampling);
  CHECK(r.samples.size() == 12);  // Every index kept.
  CHECK(r.budget.sample == 0.0);
  CHECK(r.budget.total() < ls.epsilon);

  ReleaseOptions no_post;
  no_post.stages.post = false;
  ReleaseReport r2 =
      release_period(period, ls, small_features(), source, no_post);
  CHECK(r2.budget.post == 0.0);
}

TEST_CASE("released values are never negative") {
  WPeriod period;
  period.values.assign(12, 0.5);  // Noise will push below zero often.
  PrivacyParams params =
      make_params(12, 0.5, 1.0, 10.0, 4, SamplerKind::kAdaptiveL1);
  NoiseSource source = NoiseSource::seeded(31);
  for (std::uint64_t p = 0; p < 20; ++p) {
    WPeriod shifted = period;
    shifted.index = p;
    ReleaseReport r = release_period(shifted, params, small_features(),
                                     NoiseSource::seeded(p));
    for (double v : r.private_values) REQUIRE(v >= 0.0);
  }
  (void)source;
}

TEST_CASE("release_period validates shape") {
  WPeriod period;
  period.values.assign(10, 1.0);
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 1000.0, 4, SamplerKind::kEquallySpaced);
  NoiseSource source = NoiseSource::seeded(1);
  CHECK_THROWS_AS(release_period(period, params, small_features(), source),
                  InvalidParameterError);
}

TEST_CASE("release_stream covers whole periods plus the remainder") {
  TimeSeries series = make_series(std::vector<double>(28, 100.0));
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 1000.0, 4, SamplerKind::kEquallySpaced);
  NoiseSource source = NoiseSource::seeded(17);

  StreamRelease rel =
      release_stream(series, params, small_features(), source);
  CHECK(rel.private_series.length() == 28);
  CHECK(rel.reports.size() == 2);
  CHECK(rel.remainder_length == 4);
  for (double v : rel.private_series.values) REQUIRE(v >= 0.0);
  CHECK(rel.reports[0].period_index == 0);
  CHECK(rel.reports[1].period_index == 1);

  CHECK_THROWS_AS(release_stream(series, params, small_features(), source,
                                 RemainderPolicy::kReject),
                  InvalidParameterError);

  TimeSeries exact = make_series(std::vector<double>(24, 100.0));
  StreamRelease rel2 =
      release_stream(exact, params, small_features(), source);
  CHECK(rel2.remainder_length == 0);
}

TEST_CASE("periods replay in isolation") {
  TimeSeries series = make_series(std::vector<double>(24));
  for (int i = 0; i < 24; ++i) series.values[i] = 50.0 + 3.0 * i;
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 1000.0, 4, SamplerKind::kEquallySpaced);
  NoiseSource source = NoiseSource::seeded(77);

  StreamRelease whole =
      release_stream(series, params, small_features(), source);
  PeriodPartition parts = make_periods(series, 12);
  ReleaseReport solo =
      release_period(parts.periods[1], params, small_features(), source);

  std::vector<double> slice(whole.private_series.values.begin() + 12,
                            whole.private_series.values.end());
  CHECK(solo.private_values == slice);
}

TEST_CASE("identical seeds give identical releases") {
  TimeSeries series = make_series(std::vector<double>(24, 42.0));
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  StreamRelease a = release_stream(series, params, small_features(),
                                   NoiseSource::seeded(9));
  StreamRelease b = release_stream(series, params, small_features(),
                                   NoiseSource::seeded(9));
  CHECK(a.private_series.values == b.private_series.values);

  StreamRelease c = release_stream(series, params, small_features(),
                                   NoiseSource::seeded(10));
  CHECK(a.private_series.values != c.private_series.values);
}

}  // TEST_SUITE

}  // namespace
}  // namespace optstream

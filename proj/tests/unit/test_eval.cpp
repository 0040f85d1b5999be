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
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "optstream/error.hpp"
#include "optstream/eval.hpp"
#include "optstream/features.hpp"
#include "optstream/noise.hpp"

namespace optstream {
namespace {

using test::make_series;

TimeSeries wavy_series(int length) {
  std::vector<double> values(length);
  for (int i = 0; i < length; ++i) {
    values[i] = 200.0 + 40.0 * std::sin(0.5 * i) + 2.0 * (i % 12);
  }
  return make_series(std::move(values));
}

TEST_SUITE("eval") {

TEST_CASE("avg_l1_error matches hand arithmetic") {
  std::vector<double> x{3.0, 5.0, 4.0};
  std::vector<double> x_hat{4.0, 4.0, 4.0};
  CHECK(avg_l1_error(x_hat, x) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(avg_l1_error(x, x) == 0.0);

  std::vector<double> shifted{4.0, 6.0, 5.0};
  CHECK(avg_l1_error(shifted, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("avg_l1_error is a metric") {
  std::mt19937_64 gen(15);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(6), b(6), c(6);
    for (int i = 0; i < 6; ++i) {
      a[i] = value(gen);
      b[i] = value(gen);
      c[i] = value(gen);
    }
    REQUIRE(avg_l1_error(a, b) >= 0.0);
    REQUIRE(avg_l1_error(a, b) == avg_l1_error(b, a));
    REQUIRE(avg_l1_error(a, c) <=
            avg_l1_error(a, b) + avg_l1_error(b, c) + 1e-12);
  }
}

TEST_CASE("error metrics validate lengths") {
  std::vector<double> a{1.0, 2.0};
  std::vector<double> b{1.0};
  CHECK_THROWS_AS(avg_l1_error(a, b), InvalidParameterError);
  CHECK_THROWS_AS(mean_squared_error(a, b), InvalidParameterError);
  std::vector<double> empty;
  CHECK_THROWS_AS(avg_l1_error(empty, empty), InvalidParameterError);
}

TEST_CASE("mean_squared_error squares the gaps") {
  std::vector<double> a{0.0, 0.0};
  std::vector<double> b{3.0, 4.0};
  CHECK(mean_squared_error(a, b) == doctest::Approx(12.5).epsilon(1e-12));
}

TEST_CASE("mechanism names are fixed") {
  CHECK(is_known_mechanism("optstream-ls"));
  CHECK(is_known_mechanism("optstream-es"));
  CHECK(is_known_mechanism("laplace"));
  CHECK(is_known_mechanism("dft"));
  CHECK_FALSE(is_known_mechanism("fourier"));
  CHECK_FALSE(is_known_mechanism(""));
}

TEST_CASE("unknown mechanisms raise a helpful error") {
  TimeSeries series = wavy_series(24);
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  FeatureSet features = make_feature_set(12, {});
  try {
    release_with_mechanism("fourier", series, params, features,
                           NoiseSource::seeded(1));
    FAIL("expected InvalidParameterError");
  } catch (const InvalidParameterError& e) {
    CHECK(test::contains(e.what(), "fourier"));
    CHECK(test::contains(e.what(), "optstream-ls"));
  }
}

TEST_CASE("release_with_mechanism is deterministic and non-negative") {
  TimeSeries series = wavy_series(24);
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  FeatureSet features =
      make_feature_set(12, {feature_from_ranges({{1, 6}, {7, 12}})});
  for (const char* name : kMechanismNames) {
    TimeSeries a = release_with_mechanism(name, series, params, features,
                                          NoiseSource::seeded(4));
    TimeSeries b = release_with_mechanism(name, series, params, features,
                                          NoiseSource::seeded(4));
    REQUIRE(a.length() == series.length());
    REQUIRE(a.values == b.values);
    for (double v : a.values) REQUIRE(v >= 0.0);
  }
}

TEST_CASE("run_compare produces one row per mechanism, epsilon and seed") {
  TimeSeries series = wavy_series(24);
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  FeatureSet features =
      make_feature_set(12, {feature_from_ranges({{1, 6}, {7, 12}})});
  std::vector<std::string> mechanisms{"optstream-ls", "laplace"};
  std::vector<double> epsilons{1.0, 0.5};
  std::vector<std::uint64_t> seeds{1, 2, 3};

  auto rows =
      run_compare(series, params, features, mechanisms, epsilons, seeds);
  CHECK(rows.size() == 2 * 2 * 3);
  for (const CompareRow& row : rows) {
    CHECK(is_known_mechanism(row.mechanism));
    CHECK(row.avg_l1 >= 0.0);
  }

  auto summaries = summarize_compare(rows);
  REQUIRE(summaries.size() == 4);
  for (const CompareSummary& s : summaries) {
    CHECK(s.seeds == 3);
    // Recompute the mean from the raw rows.
    double sum = 0.0;
    int n = 0;
    for (const CompareRow& row : rows) {
      if (row.mechanism == s.mechanism && row.epsilon == s.epsilon) {
        sum += row.avg_l1;
        ++n;
      }
    }
    REQUIRE(n == 3);
    CHECK(s.mean_avg_l1 == doctest::Approx(sum / 3).epsilon(1e-12));
    CHECK(s.stderr_avg_l1 >= 0.0);
  }
}

TEST_CASE("ablation reports all four stage combinations") {
  TimeSeries series = wavy_series(24);
  PrivacyParams params =
      make_params(12, 1.0, 1.0, 100.0, 4, SamplerKind::kAdaptiveL1);
  FeatureSet features =
      make_feature_set(12, {feature_from_ranges({{1, 6}, {7, 12}})});
  std::vector<std::uint64_t> seeds{1, 2};
  auto rows = run_ablation(series, params, features, seeds);
  REQUIRE(rows.size() == 8);
  std::vector<std::string> expected{"p", "p", "p+o", "p+o",
                                    "p+s", "p+s", "p+s+o", "p+s+o"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].variant == expected[i]);
    CHECK(rows[i].avg_l1 >= 0.0);
  }
}

TEST_CASE("error bound experiment prefers sampling on Lipschitz streams") {
  BoundExperimentResult r = error_bound_experiment(48, 1.0, 10.0, 100, 123);
  CHECK(r.w == 48);
  // m = round(sqrt(w / (eps L))) and k = clamp(round(w / m), 2, w).
  CHECK(r.m == 2);
  CHECK(r.k == 24);
  CHECK(r.seeds == 100);
  CHECK(r.mse_sampled < r.mse_laplace);
  CHECK(r.ratio == doctest::Approx(r.mse_laplace / r.mse_sampled)
                       .epsilon(1e-12));
}

TEST_CASE("the sampling advantage grows as the budget shrinks") {
  BoundExperimentResult tight = error_bound_experiment(48, 0.1, 10.0, 100,
                                                       123);
  BoundExperimentResult loose = error_bound_experiment(48, 1.0, 10.0, 100,
                                                       123);
  CHECK(tight.ratio > loose.ratio);
}

TEST_CASE("a Lipschitz-0 stream has zero reconstruction error") {
  // Constant streams interpolate exactly; all remaining error is noise.
  BoundExperimentResult r = error_bound_experiment(48, 1.0, 0.0, 20, 5);
  CHECK(r.mse_sampled > 0.0);
  CHECK(r.mse_sampled < r.mse_laplace);
}

}  // TEST_SUITE

}  // namespace
}  // namespace optstream

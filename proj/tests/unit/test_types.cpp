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

#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "optstream/error.hpp"
#include "optstream/types.hpp"

namespace optstream {
namespace {

using test::make_series;

TEST_SUITE("types") {

TEST_CASE("make_periods splits into whole periods plus remainder") {
  std::vector<double> values(100);
  for (int i = 0; i < 100; ++i) values[i] = i;
  TimeSeries series = make_series(values, 7);

  PeriodPartition parts = make_periods(series, 48);
  REQUIRE(parts.periods.size() == 2);
  CHECK(parts.periods[0].w() == 48);
  CHECK(parts.periods[0].origin == 7);
  CHECK(parts.periods[0].index == 0);
  CHECK(parts.periods[1].origin == 55);
  CHECK(parts.periods[1].index == 1);
  CHECK(parts.remainder.length() == 4);
  CHECK(parts.remainder.start_index == 103);

  // Concatenating periods and remainder reproduces the input exactly.
  std::vector<double> glued;
  for (const WPeriod& p : parts.periods) {
    glued.insert(glued.end(), p.values.begin(), p.values.end());
  }
  glued.insert(glued.end(), parts.remainder.values.begin(),
               parts.remainder.values.end());
  CHECK(glued == series.values);
}

TEST_CASE("make_periods with exact multiple leaves no remainder") {
  TimeSeries series = make_series(std::vector<double>(96, 1.0));
  PeriodPartition parts = make_periods(series, 48);
  CHECK(parts.periods.size() == 2);
  CHECK(parts.remainder.length() == 0);
}

TEST_CASE("make_periods shorter than one period is all remainder") {
  TimeSeries series = make_series({1.0, 2.0, 3.0}, 5);
  PeriodPartition parts = make_periods(series, 10);
  CHECK(parts.periods.empty());
  CHECK(parts.remainder.values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(parts.remainder.start_index == 5);
}

TEST_CASE("make_periods rejects w below 1") {
  TimeSeries series = make_series({1.0, 2.0});
  CHECK_THROWS_AS(make_periods(series, 0), InvalidParameterError);
  CHECK_THROWS_AS(make_periods(series, -3), InvalidParameterError);
}

TEST_CASE("make_periods accepts w of 1") {
  TimeSeries series = make_series({4.0, 5.0});
  PeriodPartition parts = make_periods(series, 1);
  REQUIRE(parts.periods.size() == 2);
  CHECK(parts.periods[0].values == std::vector<double>{4.0});
  CHECK(parts.periods[1].values == std::vector<double>{5.0});
}

}  // TEST_SUITE

}  // namespace
}  // namespace optstream

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

#ifndef OPTSTREAM_TYPES_HPP_
#define OPTSTREAM_TYPES_HPP_

#include <cstdint>
#include <vector>

namespace optstream {

// A finite, ordered numeric stream. `start_index` is the time index of
// values.front(); consecutive entries are one step apart.
struct TimeSeries {
  std::vector<double> values;
  std::int64_t start_index = 0;

  std::int64_t length() const {
    return static_cast<std::int64_t>(values.size());
  }
};

// One w-length window of a stream. `origin` is the absolute time index of
// the first element; `index` is the zero-based position of the period
// within the partitioned stream.
struct WPeriod {
  std::vector<double> values;
  std::int64_t origin = 0;
  std::uint64_t index = 0;

  int w() const { return static_cast<int>(values.size()); }
};

// Result of cutting a stream into consecutive w-periods. Any trailing
// elements that do not fill a whole period are returned unpadded in
// `remainder` (empty when w divides the length).
struct PeriodPartition {
  std::vector<WPeriod> periods;
  TimeSeries remainder;
};

enum class SamplerKind {
  kEquallySpaced,
  kAdaptiveL1,
};

// How release_stream treats a trailing partial period.
enum class RemainderPolicy {
  kReject,          // raise InvalidParameterError
  kLaplaceRelease,  // release the r leftover points with Laplace noise
};

// Cuts `series` into floor(n / w) consecutive periods plus an unpadded
// remainder. Concatenating the periods and the remainder reproduces the
// input exactly. Throws InvalidParameterError for w < 1.
PeriodPartition make_periods(const TimeSeries& series, int w);

}  // namespace optstream

#endif  // OPTSTREAM_TYPES_HPP_

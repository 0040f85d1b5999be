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

#ifndef OPTSTREAM_CSV_HPP_
#define OPTSTREAM_CSV_HPP_

#include <string>

#include "optstream/types.hpp"

namespace optstream {

// Reads a two-column CSV with header "t,value". t must be consecutive
// integers; value must parse as a finite real. Malformed input raises
// IngestionError naming the file and line.
TimeSeries read_series_csv(const std::string& path);

// Writes the series in the same format with values at six decimal places.
// Formatting is locale independent, so identical series produce identical
// bytes.
void write_series_csv(const std::string& path, const TimeSeries& series);

}  // namespace optstream

#endif  // OPTSTREAM_CSV_HPP_

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

#include "optstream/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "optstream/error.hpp"

namespace optstream {
namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& what) {
  throw IngestionError(path + " line " + std::to_string(line) + ": " + what);
}

}  // namespace

TimeSeries read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IngestionError(path + ": cannot open for reading");
  }
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) {
    fail(path, lineno, "empty file, expected header 't,value'");
  }
  if (strip_cr(line) != "t,value") {
    fail(path, lineno, "expected header 't,value', got '" + line + "'");
  }

  TimeSeries series;
  bool first = true;
  std::int64_t expected_t = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) {
      fail(path, lineno, "blank row");
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos ||
        line.find(',', comma + 1) != std::string::npos) {
      fail(path, lineno, "expected exactly 2 fields 't,value'");
    }
    const std::string t_field = line.substr(0, comma);
    const std::string v_field = line.substr(comma + 1);

    std::int64_t t = 0;
    try {
      std::size_t used = 0;
      t = std::stoll(t_field, &used);
      if (used != t_field.size()) throw std::invalid_argument(t_field);
    } catch (const std::exception&) {
      fail(path, lineno, "field 't': '" + t_field + "' is not an integer");
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(v_field, &used);
      if (used != v_field.size()) throw std::invalid_argument(v_field);
    } catch (const std::exception&) {
      fail(path, lineno, "field 'value': '" + v_field + "' is not a number");
    }
    if (!std::isfinite(v)) {
      fail(path, lineno, "field 'value': must be finite");
    }
    if (first) {
      series.start_index = t;
      expected_t = t;
      first = false;
    }
    if (t != expected_t) {
      fail(path, lineno,
           "field 't': expected consecutive index " +
               std::to_string(expected_t) + ", got " + std::to_string(t));
    }
    ++expected_t;
    series.values.push_back(v);
  }
  if (series.values.empty()) {
    throw IngestionError(path + ": no data rows");
  }
  return series;
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IngestionError(path + ": cannot open for writing");
  }
  out << "t,value\n";
  char buf[64];
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%lld,%.6f\n",
                  static_cast<long long>(series.start_index +
                                         static_cast<std::int64_t>(i)),
                  series.values[i]);
    out << buf;
  }
  if (!out) {
    throw IngestionError(path + ": write failed");
  }
}

}  // namespace optstream

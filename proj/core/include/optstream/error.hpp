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

#ifndef OPTSTREAM_ERROR_HPP_
#define OPTSTREAM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace optstream {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller supplied an argument that violates a documented precondition
// (non-positive budget, k out of range, mismatched lengths, ...).
class InvalidParameterError : public Error {
 public:
  explicit InvalidParameterError(const std::string& what) : Error(what) {}
};

// An index range [a, b] with a >= b or out of the series bounds.
class InvalidRangeError : public InvalidParameterError {
 public:
  explicit InvalidRangeError(const std::string& what)
      : InvalidParameterError(what) {}
};

// A config file, feature declaration, or hierarchy spec is malformed.
// Messages name the offending file, line, or field.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// CSV or series ingestion failed (bad header, bad row, length mismatch).
class IngestionError : public Error {
 public:
  explicit IngestionError(const std::string& what) : Error(what) {}
};

// The consistency QP did not reach the requested KKT residual within the
// iteration cap. Carries the residual reached when the cap was hit.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace optstream

#endif  // OPTSTREAM_ERROR_HPP_

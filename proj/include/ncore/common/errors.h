/*
 * Copyright 2026 The NCoRE Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef NCORE_COMMON_ERRORS_H_
#define NCORE_COMMON_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncore {

// Root of every error thrown by the library. The CLI maps subclasses onto
// process exit codes, so keep the hierarchy shallow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration (bad k, non-positive learning rate...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Covariate schema is malformed or a vector does not conform to it.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Operation invoked in the wrong lifecycle state (e.g. backward before forward).
class StateError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// Request would enumerate more than 2^20 - 1 treatment combinations.
class EnumerationBoundError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : Error(path + (line ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parsed input violates a data invariant (empty treatment set, discrete
// value outside {0,1}, duplicate id...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class TrainingDivergence : public Error {
 public:
  using Error::Error;
};

// Every hyperparameter run failed.
class SearchFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ncore

#endif  // NCORE_COMMON_ERRORS_H_

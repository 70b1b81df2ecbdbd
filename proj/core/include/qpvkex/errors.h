/*
 * Copyright 2026 The qpvkex Authors.
 *
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

#ifndef QPVKEX_ERRORS_H_
#define QPVKEX_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qpvkex {

// Base class for every error raised by the library. Callers that only care
// about "bad input" versus "something failed while running" can catch
// ValidationError and Error respectively.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (lengths, ranges, unknown keys).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numeric argument lies outside the mathematical domain of a function.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A signal or event would travel faster than light or into the past.
class CausalityError : public Error {
 public:
  using Error::Error;
};

// Parameters admit no feasible value (e.g. a negative entropy argument).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A lookup fell outside the region covered by a data table.
class CoverageError : public Error {
 public:
  using Error::Error;
};

class MalformedCodewordError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A rate was requested for an empty denominator.
class UndefinedRateError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpvkex

#endif  // QPVKEX_ERRORS_H_

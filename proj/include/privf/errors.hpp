// Copyright 2026 The privf Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace privf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A probability vector or table violates nonnegativity / normalization.
class InvalidDistributionError : public Error {
 public:
  using Error::Error;
};

/// Two objects were combined whose alphabets do not line up.
class AlphabetMismatchError : public Error {
 public:
  using Error::Error;
};

/// A mapping puts probability mass on a forbidden (infinite-cost) pair.
class InfeasibleMappingError : public Error {
 public:
  using Error::Error;
};

/// The requested distortion budget is below the minimum achievable.
class InfeasibleDeltaError : public Error {
 public:
  InfeasibleDeltaError(const std::string& what, double min_achievable)
      : Error(what), min_achievable_(min_achievable) {}
  double min_achievable() const { return min_achievable_; }

 private:
  double min_achievable_;
};

/// An operation's stated precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent external data (CSV, config, labels).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds the configured optimization-variable cap.
class VariableCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace privf

// Copyright 2026 The eprkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace eprkit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible operand shapes (factor dims, matrix sizes, vector lengths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument value outside its admissible range (index, probability, rank).
class ValueError : public Error {
 public:
  using Error::Error;
};

/// A domain invariant failed to hold; carries the invariant's name so
/// callers (and the CLI) can report which contract was violated.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, const std::string& message)
      : Error("invariant '" + invariant + "' violated: " + message),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

/// Malformed or version-mismatched serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace eprkit

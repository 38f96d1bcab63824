// Copyright 2026 The tailent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAILENT_ERRORS_HPP_
#define TAILENT_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailent {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state or set lies outside the fiber it is claimed to belong to.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two operands are defined over different bundle systems.
class IncompatibleSystems : public Error {
 public:
  using Error::Error;
};

// An object fails one of its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A named precondition of an operation does not hold.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(std::string name, const std::string& detail)
      : Error(name + ": " + detail), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// A configured desk-scale budget was exceeded. `reached` is the last depth
// (or size) that was computed completely before the cap was hit.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t reached)
      : Error(what), reached_(reached) {}
  std::size_t reached() const { return reached_; }

 private:
  std::size_t reached_;
};

// Malformed textual input (scenario files, rationals).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A name in a scenario or on the command line does not resolve.
class UnknownName : public Error {
 public:
  using Error::Error;
};

}  // namespace tailent

#endif  // TAILENT_ERRORS_HPP_

// Copyright 2026 The pptmaps Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pptmaps {

/// Base class for every error raised by the library.
///
/// Errors fall in two families: input validation (bad dimensions, malformed
/// files, violated hypotheses) and numerical breakdown (an iteration that did
/// not converge). The command-line frontend maps them to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationFailure : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class NonHermitianInput : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class InvalidAdjacency : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

/// The PPT hypothesis of a composition statement does not hold.
class NotPPT : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

/// phi(I) is not a positive multiple of the identity.
class NotScalarUnital : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class ParseError : public ValidationFailure {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationFailure("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class GraphValidationError : public ValidationFailure {
 public:
  using ValidationFailure::ValidationFailure;
};

class NoConvergence : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class DefectivePeripheralSpectrum : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace pptmaps

/*
 Copyright 2026 The smatt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace smatt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition (non-skew matrix, angle-pi
/// logarithm, dimension mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Single-direction geometry is singular (colinear directions, all catalog
/// directions degenerate).
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The prediction and the measurement set have empty intersection under the
/// model (beta(r) <= 0 for every admissible r).
class InconsistentMeasurementError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant was lost (e.g. an uncertainty matrix stopped being
/// positive definite).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration could not be parsed or failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace smatt

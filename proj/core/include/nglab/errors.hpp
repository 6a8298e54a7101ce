// Copyright 2026 The nglab Authors
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

namespace nglab {

/// Base class for failures of a numerical procedure (exit code 3 in the CLI).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class NonConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An integrand or function returned NaN or infinity.
class NonFinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Finite-difference steps reached the noise floor of the differentiated
/// function before the extrapolation converged.
class StepUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A difference quotient is dominated by the noise of its inputs.
class DerivativeNoise : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A covariance recursion lost positive semidefiniteness.
class IllConditioned : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid parameters or configuration (exit code 2 in the CLI).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroVariance : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace nglab

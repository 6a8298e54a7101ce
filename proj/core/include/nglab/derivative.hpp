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

#include <functional>

#include "nglab/quadrature.hpp"

namespace nglab {

/// A numerical derivative at q = 0.
struct DerivativeEstimate {
  int order = 1;
  double value = 0.0;
  double step_used = 0.0;
  double error_estimate = 0.0;
};

struct DerivativeConfig {
  /// Largest step of the geometric schedule h, h/2, h/4, ...
  double initial_step = 0.1;
  int max_levels = 9;
  /// A step is usable only while |g| at the stencil exceeds its error bound
  /// by this factor.
  double noise_ratio = 1e3;
  /// Accepted error-estimate, absolute (or relative to |value| when larger).
  double tolerance = 1e-3;

  void validate() const;
};

/// One-sided derivative of order 1..4 at q = 0 of a function known only on
/// q >= 0. The function returns its value together with its
/// own error bound (e.g. a quadrature error).
///
/// Forward differences over the schedule initial_step / 2^i are combined in
/// a Richardson table; the entry with the smallest error estimate is
/// returned. The schedule stops descending once the stencil values fall
/// below noise_ratio times their error bounds, or once g reports
/// NonConvergence at a refined step. Throws StepUnderflow if the
/// best error estimate at that point still exceeds the tolerance.
DerivativeEstimate derivative_at_zero(const std::function<Estimate(double)>& g, int order,
                                      const DerivativeConfig& cfg = {});

/// Convenience overload for exactly computable functions.
DerivativeEstimate derivative_at_zero(const std::function<double(double)>& g, int order,
                                      const DerivativeConfig& cfg = {});

}  // namespace nglab

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

namespace nglab {

inline constexpr double kPi = 3.141592653589793238462643383279503;
inline constexpr double kLogSqrtTwoPi = 0.918938533204672741780329736405618;

/// Standard normal density.
double normal_pdf(double x);

/// Density of N(0, variance) at x.
double normal_pdf(double x, double variance);

/// exp(-z) * I0(z) for z >= 0, I0 the modified Bessel function of order zero.
double bessel_i0_scaled(double z);

/// log I0(z), stable for large z.
double log_bessel_i0(double z);

/// Pointwise KL integrand p*ln(p/g) - p + g given log p and log g.
///
/// The extra -p + g terms integrate to zero for two densities and make the
/// integrand nonnegative. p*ln(p/g) is taken as 0 once p < 1e-300.
double kl_integrand(double log_p, double log_g);

}  // namespace nglab

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

#include "nglab/special.hpp"

#include <cmath>
#include <limits>

namespace nglab {

double normal_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrtTwoPi); }

double normal_pdf(double x, double variance) {
  return std::exp(-0.5 * x * x / variance - kLogSqrtTwoPi - 0.5 * std::log(variance));
}

double bessel_i0_scaled(double z) {
  z = std::abs(z);
  if (z < 600.0) return std::cyl_bessel_i(0.0, z) * std::exp(-z);
  // Hankel asymptotic series; the terms decrease monotonically for z >= 600.
  const double inv8z = 1.0 / (8.0 * z);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 12; ++k) {
    const double m = 2.0 * k - 1.0;
    term *= m * m * inv8z / k;
    sum += term;
  }
  return sum / std::sqrt(2.0 * kPi * z);
}

double log_bessel_i0(double z) {
  z = std::abs(z);
  if (z < 1.0) {
    // I0 - 1 directly from the series keeps log1p accurate near zero.
    const double x = 0.25 * z * z;
    double term = 1.0;
    double excess = 0.0;
    for (int k = 1; k < 30; ++k) {
      term *= x / (static_cast<double>(k) * k);
      excess += term;
      if (term < 1e-18 * excess) break;
    }
    return std::log1p(excess);
  }
  return z + std::log(bessel_i0_scaled(z));
}

double kl_integrand(double log_p, double log_g) {
  const double g = std::exp(log_g);
  if (log_p < std::log(1e-300)) return g;
  const double l = log_p - log_g;
  if (std::abs(l) < 0.1) {
    // g * (1 + e^l (l - 1)) = g * sum_{n>=2} (n - 1) l^n / n!
    double term = l;
    double sum = 0.0;
    for (int n = 2; n < 18; ++n) {
      term *= l / n;
      sum += (n - 1) * term;
    }
    return g * sum;
  }
  if (l >= 1.0) return std::exp(log_p) * (l - 1.0) + g;
  return g * (l * std::exp(l) - std::expm1(l));
}

}  // namespace nglab

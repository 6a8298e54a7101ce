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

#include <span>
#include <vector>

#include "nglab/derivative.hpp"
#include "nglab/quadrature.hpp"
#include "nglab/sources.hpp"

namespace nglab {

/// Signal-to-noise ratio q >= 0.
class Snr {
 public:
  explicit Snr(double q);
  [[nodiscard]] double value() const { return q_; }
  /// sqrt(q), the amplitude gain applied to the input.
  [[nodiscard]] double gain() const { return gain_; }

 private:
  double q_;
  double gain_;
};

/// Y = W + sqrt(q) X with W ~ N(0, 1) independent of the standardized X.
struct ScalarChannel {
  ScalarSource source;
  Snr q;
};

/// Relative tolerance 1e-9: the default for tabulation.
QuadratureConfig default_quadrature();
/// Relative tolerance 1e-12: divergence values feeding high-order differences.
QuadratureConfig tight_quadrature();

/// Truncated y-range covering the output law and its matched Gaussian.
Interval output_window(const ScalarChannel& ch, double tail_width);

/// p_Y(y) = E phi(y - sqrt(q) X).
double output_density(const ScalarChannel& ch, double y, const QuadratureConfig& cfg = default_quadrature());

/// E[X | Y = y].
double conditional_mean(const ScalarChannel& ch, double y, const QuadratureConfig& cfg = default_quadrature());

/// 1 - integral of E[X|Y=y]^2 p_Y(y) dy.
Estimate mmse(const ScalarChannel& ch, const QuadratureConfig& cfg = default_quadrature());

/// 1 / (1 + q).
double gaussian_mmse(double q);

/// Third-order low-SNR expansion
/// 1 - q + q^2 - [(EX^4)^2 - 6 EX^4 - 2 (EX^3)^2 + 15] q^3 / 6.
///
/// Exact through q^3 for symmetric laws only: for skewed laws the q^2
/// coefficient is 1 - (EX^3)^2 / 2 and the (EX^3)^2 weight in the cubic
/// bracket is 12, not 2 (see the skewed-source tests).
double mmse_taylor3(const ScalarSource& src, double q);

/// Fourth derivative at q = 0 of the non-Gaussianity predicted from moments,
/// [(EX^4)^2 - 6 EX^4 - 2 (EX^3)^2 + 9] / 2. Same symmetric-law caveat.
double d4_at_zero_from_moments(const ScalarSource& src);

/// KL divergence between law(Y) and N(0, 1 + q).
Estimate nongaussianity(const ScalarChannel& ch, const QuadratureConfig& cfg = default_quadrature());

DerivativeConfig default_divergence_derivative_config();

/// One-sided derivatives at q = 0 of q -> nongaussianity(src, q), with each
/// divergence evaluated at the tight tolerance.
std::vector<DerivativeEstimate> divergence_derivatives_at_zero(
    const ScalarSource& src, std::span<const int> orders,
    const DerivativeConfig& dcfg = default_divergence_derivative_config(),
    const QuadratureConfig& cfg = tight_quadrature());

}  // namespace nglab

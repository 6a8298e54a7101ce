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
#include <string>
#include <vector>

#include "nglab/derivative.hpp"
#include "nglab/quadrature.hpp"
#include "nglab/scalar_channel.hpp"
#include "nglab/sources.hpp"

namespace nglab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// N tones a_i sqrt(2/(T N)) cos(2 pi k_i t / T + theta_i) on [0, T] with
/// uniform independent phases. The signal energy is 1 for every N.
struct ToneModel {
  int tones = 1;
  Snr q{0.0};
  AmplitudeLaw amplitude = AmplitudeLaw::unit();
  std::vector<int> frequencies{1};
  double horizon = kTwoPi;

  /// Frequencies k_i = 1..N on the horizon 2 pi.
  static ToneModel make(int tones, double q, AmplitudeLaw amplitude);

  void validate() const;
};

struct CurvePoint {
  double q;
  double value;
  double error;
};

/// Tabulated divergence values on a strictly increasing q-grid.
class DivergenceCurve {
 public:
  DivergenceCurve(std::vector<CurvePoint> points, std::string source);

  [[nodiscard]] const std::vector<CurvePoint>& points() const { return points_; }
  [[nodiscard]] const std::string& source() const { return source_; }

  /// Central-difference derivative at an interior point of a uniformly spaced
  /// stretch; uses the +/-2 neighbours for one Richardson step when present.
  [[nodiscard]] Estimate derivative(std::size_t index) const;

 private:
  std::vector<CurvePoint> points_;
  std::string source_;
};

/// KL divergence of one tone's 2-D coefficient output (a cos theta, -a sin theta)
/// scaled by sqrt(q) plus N(0, I) noise, against N(0, (1 + q/2) I).
/// Computed from the rotation-invariant radial density
/// E_a[exp(-(r^2 + q a^2)/2) I0(r a sqrt(q))] / (2 pi).
Estimate tone_divergence(const AmplitudeLaw& law, double q, const QuadratureConfig& cfg = default_quadrature());

DivergenceCurve tone_divergence_curve(const AmplitudeLaw& law, std::span<const double> grid,
                                      const QuadratureConfig& cfg = default_quadrature());

/// N * tone_divergence(q / N).
Estimate dn_divergence(const ToneModel& model, const QuadratureConfig& cfg = default_quadrature());

/// Causal error from the divergence: (2N/q) ln(1 + q/(2N)) - (2/q) D_N. Equals 1 at q = 0.
Estimate cmmse_exact(const ToneModel& model, const QuadratureConfig& cfg = default_quadrature());

/// Non-causal error: 1/(1 + q/(2N)) - 2 dD_N/dq. Throws DerivativeNoise when
/// the difference quotient's error exceeds 10% of the correction term.
Estimate mmse_exact(const ToneModel& model, const QuadratureConfig& cfg = default_quadrature());

double gaussian_cmmse(int tones, double q);
double gaussian_mmse_tone(int tones, double q);

/// 1 - [1/4 + d2] q / N.
double cmmse_asymptotic(int tones, double q, double d2);
/// 1 - [1/2 + 2 d2] q / N.
double mmse_asymptotic(int tones, double q, double d2);

/// D''(0) of the single-tone divergence curve.
DerivativeEstimate tone_d2_at_zero(const AmplitudeLaw& law, const DerivativeConfig& dcfg = default_divergence_derivative_config(),
                                   const QuadratureConfig& cfg = tight_quadrature());

enum class ErrorKind { Causal, NonCausal };

struct RateFitPoint {
  int tones;
  double x;        // q / N
  double error;    // CMMSE or MMSE
  double deficit;  // 1 - error
};

struct RateFit {
  ErrorKind kind;
  /// c1 of deficit ~ c1 (q/N) + c2 (q/N)^2.
  double coefficient;
  double quadratic;
  /// 1/4 + d2 (causal) or 1/2 + 2 d2 (non-causal).
  double predicted;
  double relative_mismatch;
  /// Norm of deficit - c1 q/N, i.e. the O(1/N^2) remainder.
  double remainder_norm;
  std::vector<RateFitPoint> points;
};

/// Least-squares fit of the error deficit against q/N over an N-sweep
/// (at least 4 values spanning a decade).
RateFit convergence_rate_fit(const AmplitudeLaw& law, std::span<const int> tones, double q, ErrorKind kind,
                             double d2, const QuadratureConfig& cfg = default_quadrature());

}  // namespace nglab

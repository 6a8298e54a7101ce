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

#include "nglab/tone_channel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nglab/errors.hpp"
#include "nglab/special.hpp"

namespace nglab {

ToneModel ToneModel::make(int tones, double q, AmplitudeLaw amplitude) {
  ToneModel m;
  m.tones = tones;
  m.q = Snr(q);
  m.amplitude = std::move(amplitude);
  m.frequencies.clear();
  for (int k = 1; k <= tones; ++k) m.frequencies.push_back(k);
  m.validate();
  return m;
}

void ToneModel::validate() const {
  if (tones < 1) throw ConfigError("tone model needs at least one tone");
  if (static_cast<int>(frequencies.size()) != tones) throw ConfigError("tone model: one frequency per tone");
  std::set<int> seen;
  for (int k : frequencies) {
    if (k <= 0) throw ConfigError("tone model: frequencies must be positive integers");
    if (!seen.insert(k).second) throw ConfigError("tone model: frequencies must be distinct");
  }
  if (!(horizon > 0.0)) throw ConfigError("tone model: horizon must be positive");
}

DivergenceCurve::DivergenceCurve(std::vector<CurvePoint> points, std::string source)
    : points_(std::move(points)), source_(std::move(source)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (i > 0 && !(p.q > points_[i - 1].q)) throw ConfigError("divergence curve: grid must be strictly increasing");
    if (p.value < -p.error) throw ConfigError("divergence curve: negative divergence");
    if (p.q == 0.0 && p.value != 0.0) throw ConfigError("divergence curve: D(0) must be 0");
  }
}

Estimate DivergenceCurve::derivative(std::size_t i) const {
  if (i == 0 || i + 1 >= points_.size()) throw ConfigError("divergence curve: derivative needs interior point");
  const auto& lo1 = points_[i - 1];
  const auto& hi1 = points_[i + 1];
  const double h = 0.5 * (hi1.q - lo1.q);
  const double d1 = (hi1.value - lo1.value) / (2.0 * h);
  double noise = (hi1.error + lo1.error) / (2.0 * h);
  if (i >= 2 && i + 2 < points_.size()) {
    const auto& lo2 = points_[i - 2];
    const auto& hi2 = points_[i + 2];
    const double d2 = (hi2.value - lo2.value) / (4.0 * h);
    noise = std::max(noise, (hi2.error + lo2.error) / (4.0 * h));
    const double rich = (4.0 * d1 - d2) / 3.0;
    return Estimate{rich, std::abs(rich - d1) + 2.0 * noise};
  }
  return Estimate{d1, noise};
}

namespace {

// log E_a[exp(-(r^2 + s^2 a^2)/2) I0(r a s)] for s > 0.
double log_radial_mass(const AmplitudeLaw& law, double r, double s, const QuadratureConfig& cfg) {
  auto log_kernel = [r, s](double a) { return -0.5 * (r * r + s * s * a * a) + log_bessel_i0(r * a * s); };
  const Interval sup = law.magnitude_support(cfg.tail_width);
  const double peak = std::clamp(r / s, sup.lo, sup.hi);
  const double offset = log_kernel(peak);
  QuadratureConfig inner = cfg;
  inner.relative_tolerance = std::max(1e-13, std::min(cfg.relative_tolerance, 1e-10));
  inner.absolute_tolerance = std::numeric_limits<double>::min();
  const double width = 1.0 / s;
  std::vector<double> hints;
  for (double k : {-8.0, -4.0, 0.0, 4.0, 8.0}) hints.push_back(peak + k * width);
  const double mass =
      law.expect_magnitude([&](double a) { return std::exp(log_kernel(a) - offset); }, hints, inner);
  return std::log(mass) + offset;
}

}  // namespace

Estimate tone_divergence(const AmplitudeLaw& law, double q, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(q >= 0.0) || !std::isfinite(q)) throw ConfigError("tone_divergence: q must be finite and nonnegative");
  if (q == 0.0) return Estimate{0.0, 0.0};
  const double s = std::sqrt(q);
  const double v = 1.0 + 0.5 * q;
  const double log_v = std::log1p(0.5 * q);
  const double log_two_pi = std::log(kTwoPi);
  auto profile = [&](double r) {
    const double log_p = log_radial_mass(law, r, s, cfg) - log_two_pi;
    const double log_g = -log_two_pi - log_v - 0.5 * r * r / v;
    return kl_integrand(log_p, log_g);
  };
  const Interval a = law.magnitude_support(cfg.tail_width);
  const double r_max = s * a.hi + cfg.tail_width * std::sqrt(v);
  const Estimate d = integrate_radial(profile, r_max, cfg, {s * a.lo, s * a.hi});
  return Estimate{std::max(0.0, d.value), d.error};
}

DivergenceCurve tone_divergence_curve(const AmplitudeLaw& law, std::span<const double> grid,
                                      const QuadratureConfig& cfg) {
  std::vector<CurvePoint> pts;
  pts.reserve(grid.size());
  for (double q : grid) {
    const Estimate e = tone_divergence(law, q, cfg);
    pts.push_back({q, e.value, e.error});
  }
  return DivergenceCurve(std::move(pts), law.name());
}

Estimate dn_divergence(const ToneModel& model, const QuadratureConfig& cfg) {
  model.validate();
  const double n = model.tones;
  const Estimate d = tone_divergence(model.amplitude, model.q.value() / n, cfg);
  return Estimate{n * d.value, n * d.error};
}

double gaussian_cmmse(int tones, double q) {
  if (tones < 1 || !(q >= 0.0)) throw ConfigError("gaussian_cmmse: need N >= 1 and q >= 0");
  if (q == 0.0) return 1.0;
  const double x = q / (2.0 * tones);
  return std::log1p(x) / x;
}

double gaussian_mmse_tone(int tones, double q) {
  if (tones < 1 || !(q >= 0.0)) throw ConfigError("gaussian_mmse_tone: need N >= 1 and q >= 0");
  return 1.0 / (1.0 + q / (2.0 * tones));
}

Estimate cmmse_exact(const ToneModel& model, const QuadratureConfig& cfg) {
  model.validate();
  const double q = model.q.value();
  if (q == 0.0) return Estimate{1.0, 0.0};
  const Estimate dn = dn_divergence(model, cfg);
  return Estimate{gaussian_cmmse(model.tones, q) - 2.0 / q * dn.value, 2.0 / q * dn.error};
}

Estimate mmse_exact(const ToneModel& model, const QuadratureConfig& cfg) {
  model.validate();
  const double q = model.q.value();
  if (q == 0.0) return Estimate{1.0, 0.0};
  // d/dq [N D(q/N)] = D'(q/N).
  const double x = q / model.tones;
  const double h = std::min(0.01, 0.25 * x);
  std::vector<double> grid;
  for (int k = -2; k <= 2; ++k) grid.push_back(x + k * h);
  const DivergenceCurve curve = tone_divergence_curve(model.amplitude, grid, cfg);
  const Estimate slope = curve.derivative(2);
  const double correction = 2.0 * slope.value;
  const double correction_error = 2.0 * slope.error;
  if (correction_error > std::max(0.1 * std::abs(correction), 1e-9)) {
    throw DerivativeNoise("mmse_exact: divergence slope error " + std::to_string(correction_error) +
                          " exceeds 10% of the correction " + std::to_string(correction));
  }
  return Estimate{gaussian_mmse_tone(model.tones, q) - correction, correction_error};
}

double cmmse_asymptotic(int tones, double q, double d2) { return 1.0 - (0.25 + d2) * q / tones; }

double mmse_asymptotic(int tones, double q, double d2) { return 1.0 - (0.5 + 2.0 * d2) * q / tones; }

DerivativeEstimate tone_d2_at_zero(const AmplitudeLaw& law, const DerivativeConfig& dcfg,
                                   const QuadratureConfig& cfg) {
  return derivative_at_zero([&](double q) { return tone_divergence(law, q, cfg); }, 2, dcfg);
}

RateFit convergence_rate_fit(const AmplitudeLaw& law, std::span<const int> tones, double q, ErrorKind kind,
                             double d2, const QuadratureConfig& cfg) {
  if (tones.size() < 4) throw ConfigError("convergence_rate_fit: need at least 4 tone counts");
  const auto [lo, hi] = std::minmax_element(tones.begin(), tones.end());
  if (*lo < 1 || *hi < 10 * *lo) throw ConfigError("convergence_rate_fit: tone counts must span a decade");
  if (!(q > 0.0)) throw ConfigError("convergence_rate_fit: q must be positive");

  RateFit fit{};
  fit.kind = kind;
  const auto n = static_cast<Eigen::Index>(tones.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd deficit(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int tone_count = tones[static_cast<std::size_t>(i)];
    const ToneModel model = ToneModel::make(tone_count, q, law);
    const double err = kind == ErrorKind::Causal ? cmmse_exact(model, cfg).value : mmse_exact(model, cfg).value;
    const double x = q / tone_count;
    design(i, 0) = x;
    design(i, 1) = x * x;
    deficit(i) = 1.0 - err;
    fit.points.push_back({tone_count, x, err, 1.0 - err});
  }
  const Eigen::Vector2d c = design.colPivHouseholderQr().solve(deficit);
  fit.coefficient = c(0);
  fit.quadratic = c(1);
  fit.predicted = kind == ErrorKind::Causal ? 0.25 + d2 : 0.5 + 2.0 * d2;
  fit.relative_mismatch = std::abs(fit.coefficient - fit.predicted) / std::abs(fit.predicted);
  fit.remainder_norm = (deficit - c(0) * design.col(0)).norm();
  return fit;
}

}  // namespace nglab

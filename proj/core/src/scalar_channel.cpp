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

#include "nglab/scalar_channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nglab/errors.hpp"
#include "nglab/special.hpp"

namespace nglab {

Snr::Snr(double q) : q_(q), gain_(std::sqrt(q)) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw ConfigError("snr must be finite and nonnegative");
}

QuadratureConfig default_quadrature() {
  QuadratureConfig cfg;
  cfg.relative_tolerance = 1e-9;
  cfg.absolute_tolerance = 1e-15;
  return cfg;
}

QuadratureConfig tight_quadrature() {
  QuadratureConfig cfg;
  cfg.relative_tolerance = 1e-12;
  cfg.absolute_tolerance = 1e-25;
  return cfg;
}

namespace {

std::vector<double> output_hints(const ScalarChannel& ch, double tail_width) {
  const double s = ch.q.gain();
  std::vector<double> hints{0.0};
  if (const auto* atoms = ch.source.law().atoms_or_null()) {
    for (const auto& a : *atoms) hints.push_back(s * a.value);
  } else {
    const Interval sup = ch.source.effective_support(tail_width);
    hints.push_back(s * sup.lo);
    hints.push_back(s * sup.hi);
  }
  return hints;
}

}  // namespace

Interval output_window(const ScalarChannel& ch, double tail_width) {
  const double s = ch.q.gain();
  const Interval sup = ch.source.effective_support(tail_width);
  const double gauss = tail_width * std::sqrt(1.0 + ch.q.value());
  return Interval{std::min(s * sup.lo - tail_width, -gauss), std::max(s * sup.hi + tail_width, gauss)};
}

double output_density(const ScalarChannel& ch, double y, const QuadratureConfig& cfg) {
  return std::exp(ch.source.smooth(y, ch.q.gain(), cfg).log_mass - kLogSqrtTwoPi);
}

double conditional_mean(const ScalarChannel& ch, double y, const QuadratureConfig& cfg) {
  return ch.source.smooth(y, ch.q.gain(), cfg).mean;
}

Estimate mmse(const ScalarChannel& ch, const QuadratureConfig& cfg) {
  cfg.validate();
  if (ch.q.value() == 0.0) return Estimate{1.0, 0.0};
  const double s = ch.q.gain();
  auto integrand = [&](double y) {
    const Smoothed sm = ch.source.smooth(y, s, cfg);
    return sm.mean * sm.mean * std::exp(sm.log_mass - kLogSqrtTwoPi);
  };
  const Estimate explained =
      integrate(integrand, output_window(ch, cfg.tail_width), cfg, output_hints(ch, cfg.tail_width));
  return Estimate{1.0 - explained.value, explained.error};
}

double gaussian_mmse(double q) {
  if (!(q >= 0.0)) throw ConfigError("gaussian_mmse: q must be nonnegative");
  return 1.0 / (1.0 + q);
}

double mmse_taylor3(const ScalarSource& src, double q) {
  const double m3 = src.moment(3);
  const double m4 = src.moment(4);
  return 1.0 - q + q * q - (m4 * m4 - 6.0 * m4 - 2.0 * m3 * m3 + 15.0) * q * q * q / 6.0;
}

double d4_at_zero_from_moments(const ScalarSource& src) {
  const double m3 = src.moment(3);
  const double m4 = src.moment(4);
  return 0.5 * (m4 * m4 - 6.0 * m4 - 2.0 * m3 * m3 + 9.0);
}

Estimate nongaussianity(const ScalarChannel& ch, const QuadratureConfig& cfg) {
  cfg.validate();
  const double q = ch.q.value();
  if (q == 0.0) return Estimate{0.0, 0.0};
  const double s = ch.q.gain();
  const double v = 1.0 + q;
  const double half_log_v = 0.5 * std::log1p(q);
  auto integrand = [&](double y) {
    const double log_p = ch.source.smooth(y, s, cfg).log_mass - kLogSqrtTwoPi;
    const double log_g = -kLogSqrtTwoPi - half_log_v - 0.5 * y * y / v;
    return kl_integrand(log_p, log_g);
  };
  const Estimate d =
      integrate(integrand, output_window(ch, cfg.tail_width), cfg, output_hints(ch, cfg.tail_width));
  return Estimate{std::max(0.0, d.value), d.error};
}

DerivativeConfig default_divergence_derivative_config() {
  DerivativeConfig d;
  d.initial_step = 0.05;
  d.max_levels = 10;
  d.noise_ratio = 1e3;
  d.tolerance = 1e-2;
  return d;
}

std::vector<DerivativeEstimate> divergence_derivatives_at_zero(const ScalarSource& src, std::span<const int> orders,
                                                               const DerivativeConfig& dcfg,
                                                               const QuadratureConfig& cfg) {
  std::map<double, Estimate> memo;
  auto curve = [&](double q) {
    auto it = memo.find(q);
    if (it == memo.end()) it = memo.emplace(q, nongaussianity(ScalarChannel{src, Snr(q)}, cfg)).first;
    return it->second;
  };
  std::vector<DerivativeEstimate> out;
  out.reserve(orders.size());
  for (int k : orders) out.push_back(derivative_at_zero(curve, k, dcfg));
  return out;
}

}  // namespace nglab

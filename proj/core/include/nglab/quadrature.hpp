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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "nglab/errors.hpp"

namespace nglab {

struct QuadratureConfig {
  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-14;
  int max_subdivisions = 4000;
  /// Half-width of truncated Gaussian-tailed domains, in standard deviations.
  double tail_width = 10.0;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  [[nodiscard]] QuadratureConfig with_relative(double rel) const {
    QuadratureConfig c = *this;
    c.relative_tolerance = rel;
    return c;
  }
};

/// A computed value together with an absolute error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] bool empty() const { return !(hi > lo); }
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980761136, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1,3,5,7,9.
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
};

template <class F>
double checked_eval(F& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NonFinite("integrand returned a non-finite value at x = " + std::to_string(x));
  }
  return v;
}

template <class F>
Panel gauss_kronrod_panel(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = checked_eval(f, center);
  double kronrod = f_center * kKronrodWeights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f_left{};
  std::array<double, 10> f_right{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double a = checked_eval(f, center - dx);
    const double b = checked_eval(f, center + dx);
    f_left[j] = a;
    f_right[j] = b;
    kronrod += kKronrodWeights[j] * (a + b);
    abs_sum += kKronrodWeights[j] * (std::abs(a) + std::abs(b));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (a + b);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(f_center - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    asc += kKronrodWeights[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));
  }
  const double result = kronrod * half;
  const double res_abs = abs_sum * std::abs(half);
  const double res_asc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  // QUADPACK error scaling, with a round-off floor.
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  return Panel{lo, hi, result, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of `f` over `domain`, bisecting
/// the panel with the largest error until the summed error bound is below
/// max(absolute_tolerance, relative_tolerance * |result|).
///
/// Optional interior breakpoints (sorted or not) seed the initial partition.
/// Throws NonConvergence when max_subdivisions is exhausted and NonFinite
/// when the integrand produces NaN or infinity.
template <class F>
Estimate integrate(F&& f, Interval domain, const QuadratureConfig& cfg,
                   const std::vector<double>& breakpoints = {}) {
  if (domain.empty()) {
    if (domain.hi == domain.lo) return {0.0, 0.0};
    throw ConfigError("integrate: empty domain");
  }
  std::vector<double> cuts{domain.lo};
  for (double b : breakpoints) {
    if (b > domain.lo && b < domain.hi) cuts.push_back(b);
  }
  cuts.push_back(domain.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<detail::Panel> panels;
  panels.reserve(64);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    panels.push_back(detail::gauss_kronrod_panel(f, cuts[i], cuts[i + 1]));
  }

  auto totals = [&panels] {
    Estimate e;
    for (const auto& p : panels) {
      e.value += p.value;
      e.error += p.error;
    }
    return e;
  };

  Estimate total = totals();
  int subdivisions = 0;
  while (total.error > std::max(cfg.absolute_tolerance, cfg.relative_tolerance * std::abs(total.value))) {
    if (subdivisions >= cfg.max_subdivisions) {
      throw NonConvergence("integrate: tolerance not met after " + std::to_string(subdivisions) +
                           " subdivisions (error " + std::to_string(total.error) + ")");
    }
    const auto worst = std::max_element(panels.begin(), panels.end(),
                                        [](const auto& a, const auto& b) { return a.error < b.error; });
    const double lo = worst->lo;
    const double hi = worst->hi;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      throw NonConvergence("integrate: panel width reached machine resolution");
    }
    *worst = detail::gauss_kronrod_panel(f, lo, mid);
    panels.push_back(detail::gauss_kronrod_panel(f, mid, hi));
    ++subdivisions;
    total = totals();
  }
  return total;
}

/// Integral over the plane of a rotation-invariant function given by its
/// radial profile: 2*pi * integral_0^r_max r f(r) dr.
template <class F>
Estimate integrate_radial(F&& f, double r_max, const QuadratureConfig& cfg,
                          const std::vector<double>& breakpoints = {}) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  auto with_jacobian = [&f](double r) { return kTwoPi * r * f(r); };
  return integrate(with_jacobian, Interval{0.0, r_max}, cfg, breakpoints);
}

/// The symmetric window center +/- tail_width * sd.
inline Interval gaussian_window(double center, double sd, double tail_width) {
  return Interval{center - tail_width * sd, center + tail_width * sd};
}

}  // namespace nglab

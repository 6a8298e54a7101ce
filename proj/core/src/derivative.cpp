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

#include "nglab/derivative.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace nglab {

void DerivativeConfig::validate() const {
  if (!(initial_step > 0.0)) throw ConfigError("derivative initial_step must be positive");
  if (max_levels < 2) throw ConfigError("derivative max_levels must be at least 2");
  if (!(noise_ratio >= 1.0)) throw ConfigError("derivative noise_ratio must be >= 1");
  if (!(tolerance > 0.0)) throw ConfigError("derivative tolerance must be positive");
}

namespace {

// Forward-difference coefficients of g(j h), j = 0..order.
constexpr std::array<std::array<double, 5>, 5> kForward = {{
    {1, 0, 0, 0, 0},
    {-1, 1, 0, 0, 0},
    {1, -2, 1, 0, 0},
    {-1, 3, -3, 1, 0},
    {1, -4, 6, -4, 1},
}};

}  // namespace

DerivativeEstimate derivative_at_zero(const std::function<Estimate(double)>& g, int order,
                                      const DerivativeConfig& cfg) {
  if (order < 1 || order > 4) throw ConfigError("derivative order must be in 1..4");
  cfg.validate();
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const auto& coeff = kForward[static_cast<std::size_t>(order)];

  // Steps are exact binary fractions of initial_step, so j*h repeats exactly
  // across levels and can be cached.
  std::map<double, Estimate> cache;
  auto eval = [&](double q) {
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    const Estimate e = g(q);
    if (!std::isfinite(e.value) || !std::isfinite(e.error)) {
      throw NonFinite("derivative_at_zero: non-finite function value at q = " + std::to_string(q));
    }
    cache.emplace(q, e);
    return e;
  };

  // g(0) enters every stencil; for the divergence it is exactly zero.
  const Estimate g0 = eval(0.0);

  std::vector<std::vector<double>> table;
  DerivativeEstimate best{order, 0.0, cfg.initial_step, std::numeric_limits<double>::infinity()};
  DerivativeEstimate fallback = best;
  bool floor_hit = false;

  for (int level = 0; level < cfg.max_levels; ++level) {
    const double h = std::ldexp(cfg.initial_step, -level);
    double signal = 0.0;
    double noise_in = 0.0;
    double sum = coeff[0] * g0.value;
    double noise = g0.error + 4.0 * kEps * std::abs(g0.value);
    std::vector<Estimate> values;
    try {
      for (int j = 1; j <= order; ++j) values.push_back(eval(j * h));
    } catch (const NonConvergence&) {
      // g itself cannot be resolved this close to zero.
      if (level == 0) throw;
      floor_hit = true;
      break;
    }
    for (int j = 1; j <= order; ++j) {
      const Estimate& e = values[static_cast<std::size_t>(j - 1)];
      signal = std::max(signal, std::abs(e.value));
      noise_in = std::max(noise_in, e.error);
      sum += coeff[static_cast<std::size_t>(j)] * e.value;
      noise += std::abs(coeff[static_cast<std::size_t>(j)]) * (e.error + 4.0 * kEps * std::abs(e.value));
    }
    if (level > 0 && noise_in > 0.0 && signal < cfg.noise_ratio * noise_in) {
      floor_hit = true;
      break;
    }
    const double scale = std::pow(h, order);
    noise /= scale;

    // A lone level carries no error estimate; only extrapolated entries
    // (which compare two levels) are candidates. The exception is a stencil
    // that is noise-dominated from the start: there the level-0 entry is
    // reported as zero-within-noise.
    std::vector<double> row{sum / scale};
    if (level == 0) fallback = DerivativeEstimate{order, row[0], h, std::abs(row[0]) + 3.0 * noise};
    for (int j = 1; j <= level; ++j) {
      const double factor = std::ldexp(1.0, j) - 1.0;
      const double prev_same = row[static_cast<std::size_t>(j - 1)];
      const double prev_coarse = table.back()[static_cast<std::size_t>(j - 1)];
      const double next = prev_same + (prev_same - prev_coarse) / factor;
      row.push_back(next);
      const double err = std::max(std::abs(next - prev_same), std::abs(next - prev_coarse)) + 3.0 * noise;
      if (err < best.error_estimate) best = DerivativeEstimate{order, next, h, err};
    }
    // The whole schedule is scanned: stopping at the first acceptable entry
    // trusts accidental agreement between adjacent Richardson columns.
    table.push_back(std::move(row));
  }

  if (floor_hit && table.size() < 2) best = fallback;
  if (best.error_estimate > cfg.tolerance * std::max(1.0, std::abs(best.value))) {
    throw StepUnderflow(std::string("derivative_at_zero: order ") + std::to_string(order) +
                        (floor_hit ? " reached the noise floor" : " exhausted the step schedule") +
                        " with error estimate " + std::to_string(best.error_estimate));
  }
  return best;
}

DerivativeEstimate derivative_at_zero(const std::function<double(double)>& g, int order,
                                      const DerivativeConfig& cfg) {
  return derivative_at_zero([&g](double q) { return Estimate{g(q), 0.0}; }, order, cfg);
}

}  // namespace nglab

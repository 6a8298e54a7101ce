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

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "nglab/ct_verify.hpp"
#include "nglab/errors.hpp"
#include "nglab/parallel.hpp"

namespace nglab {

void McConfig::validate() const {
  if (samples < 10'000) throw ConfigError("monte carlo: sample count must be at least 10^4");
}

namespace {

constexpr std::size_t kChunk = 1 << 14;

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
};

}  // namespace

McEstimate mc_scalar_mmse(const ScalarSource& src, double q, const McConfig& cfg, const QuadratureConfig& qcfg) {
  cfg.validate();
  const Snr snr(q);
  const double s = snr.gain();
  const std::size_t chunks = (cfg.samples + kChunk - 1) / kChunk;
  const boost::math::normal standard;

  auto run_chunk = [&](std::size_t c) {
    Rng rng = make_stream(cfg.seed, c);
    const std::size_t begin = c * kChunk;
    const std::size_t n = std::min(kChunk, cfg.samples - begin);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ChunkSums sums;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = src.sample(rng);
      double w = 0.0;
      if (cfg.stratified) {
        const double u = (static_cast<double>(i) + unit(rng)) / static_cast<double>(n);
        w = boost::math::quantile(standard, std::clamp(u, 1e-300, 1.0 - 1e-16));
      } else {
        w = gauss(rng);
      }
      const double y = w + s * x;
      const double e = x - src.smooth(y, s, qcfg).mean;
      sums.sum += e * e;
      sums.sum_sq += e * e * e * e;
    }
    sums.count = n;
    return sums;
  };

  const auto parts = parallel_map<ChunkSums>(chunks, run_chunk);
  ChunkSums total;
  for (const auto& p : parts) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
    total.count += p.count;
  }
  const double n = static_cast<double>(total.count);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sum_sq / n - mean * mean) * n / (n - 1.0));
  return McEstimate{mean, std::sqrt(var / n), total.count};
}

}  // namespace nglab

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

#include <cmath>
#include <random>

#include "nglab/ct_verify.hpp"

namespace nglab {

ObservationPath simulate_path(const KalmanSetup& setup, const AmplitudeLaw& amplitude, Rng& rng) {
  setup.validate();
  ObservationPath path;
  path.dt = setup.dt();
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  for (int i = 0; i < setup.tones; ++i) {
    path.amplitudes.push_back(amplitude.sample_magnitude(rng));
    path.phases.push_back(phase(rng));
  }
  const double norm = std::sqrt(2.0 / (setup.horizon * setup.tones));
  const double gain = std::sqrt(setup.q);
  const double noise_sd = std::sqrt(path.dt);
  std::normal_distribution<double> noise(0.0, 1.0);

  const auto steps = static_cast<std::size_t>(setup.steps);
  path.times.resize(steps);
  path.signal.resize(steps);
  path.increments.resize(steps);
  for (std::size_t j = 0; j < steps; ++j) {
    const double t = static_cast<double>(j) * path.dt;
    double xi = 0.0;
    for (std::size_t i = 0; i < path.amplitudes.size(); ++i) {
      const double w = kTwoPi * setup.frequencies[i] / setup.horizon;
      xi += path.amplitudes[i] * norm * std::cos(w * t + path.phases[i]);
    }
    path.times[j] = t;
    path.signal[j] = xi;
    path.increments[j] = gain * xi * path.dt + noise_sd * noise(rng);
  }
  return path;
}

}  // namespace nglab

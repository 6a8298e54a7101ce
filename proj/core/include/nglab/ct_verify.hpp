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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nglab/quadrature.hpp"
#include "nglab/scalar_channel.hpp"
#include "nglab/sources.hpp"
#include "nglab/tone_channel.hpp"

namespace nglab {

/// Time grid and tone set for the discretized continuous-time channel
/// d eta = sqrt(q) xi(t) dt + dw on [0, T].
struct KalmanSetup {
  double horizon = kTwoPi;
  int steps = 4096;
  int tones = 1;
  double q = 0.0;
  std::vector<int> frequencies{1};

  /// Frequencies 1..N on the horizon 2 pi with T/dt = steps.
  static KalmanSetup make(int tones, double q, int steps = 4096);
  /// Throws ConfigError unless horizon/dt is an integer >= 100.
  static KalmanSetup with_step(double horizon, double dt, int tones, double q);

  [[nodiscard]] double dt() const { return horizon / steps; }
  void validate() const;
};

struct KalmanErrors {
  double cmmse;
  double mmse;
  /// Smallest eigenvalue of the error covariance over the whole recursion.
  double min_eigenvalue;
};

/// Riccati recursion for the Gaussian tone pair: the state is the 2N static
/// coefficients with prior variance 1/N, observed one time step at a time
/// through the sampled cosine/sine basis scaled by sqrt(q dt).
///
/// The causal error integrates the filtered signal-error variance over
/// [0, T]; the non-causal error uses the final covariance, since for a
/// static state the smoother coincides with the final filter. Throws
/// IllConditioned if the covariance acquires an eigenvalue below -1e-10.
KalmanErrors kalman_errors(const KalmanSetup& setup);

double kalman_cmmse(const KalmanSetup& setup);
double kalman_mmse(const KalmanSetup& setup);

struct KalmanSweep {
  std::vector<KalmanSetup> setups;
  std::vector<KalmanErrors> errors;
  /// First-order Richardson value 2 e(dt/2) - e(dt) from the two finest levels.
  double cmmse_extrapolated;
  double mmse_extrapolated;
};

/// Recursions at steps, 2 steps, 4 steps, ... (`levels` >= 2 entries).
KalmanSweep kalman_dt_sweep(int tones, double q, int base_steps, int levels);

struct ObservationPath {
  double dt;
  std::vector<double> times;
  std::vector<double> signal;
  /// eta(t_{j+1}) - eta(t_j).
  std::vector<double> increments;
  std::vector<double> amplitudes;
  std::vector<double> phases;
};

/// Euler-Maruyama path: the tone signal is drawn once, then
/// increments sqrt(q) xi(t_j) dt + N(0, dt).
ObservationPath simulate_path(const KalmanSetup& setup, const AmplitudeLaw& amplitude, Rng& rng);

struct McConfig {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  /// Stratify the noise draws over equiprobable strata within each chunk.
  bool stratified = false;

  void validate() const;
};

struct McEstimate {
  double value;
  double standard_error;
  std::size_t samples;
};

/// Monte Carlo average of (X - E[X|Y])^2 over independent (X, W) draws.
/// Work is split into fixed-size chunks, each with its own stream derived
/// from the seed, so results do not depend on the worker count. The
/// reported standard error is the i.i.d. one (conservative when stratified).
McEstimate mc_scalar_mmse(const ScalarSource& src, double q, const McConfig& cfg,
                          const QuadratureConfig& qcfg = default_quadrature());

}  // namespace nglab

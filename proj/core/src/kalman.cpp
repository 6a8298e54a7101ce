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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "nglab/ct_verify.hpp"
#include "nglab/errors.hpp"

namespace nglab {

KalmanSetup KalmanSetup::make(int tones, double q, int steps) {
  KalmanSetup s;
  s.tones = tones;
  s.q = q;
  s.steps = steps;
  s.frequencies.clear();
  for (int k = 1; k <= tones; ++k) s.frequencies.push_back(k);
  s.validate();
  return s;
}

KalmanSetup KalmanSetup::with_step(double horizon, double dt, int tones, double q) {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw ConfigError("kalman: dt and horizon must be positive");
  const double ratio = horizon / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * ratio) throw ConfigError("kalman: T/dt must be an integer");
  KalmanSetup s = make(tones, q, static_cast<int>(rounded));
  s.horizon = horizon;
  s.validate();
  return s;
}

void KalmanSetup::validate() const {
  if (steps < 100) throw ConfigError("kalman: T/dt must be at least 100");
  if (!(horizon > 0.0)) throw ConfigError("kalman: horizon must be positive");
  if (!(q >= 0.0) || !std::isfinite(q)) throw ConfigError("kalman: q must be finite and nonnegative");
  if (tones < 1 || static_cast<int>(frequencies.size()) != tones) {
    throw ConfigError("kalman: one frequency per tone required");
  }
  std::set<int> seen;
  for (int k : frequencies) {
    if (k <= 0 || !seen.insert(k).second) throw ConfigError("kalman: frequencies must be distinct positive integers");
  }
}

namespace {

Eigen::VectorXd basis_at(const KalmanSetup& s, double t) {
  const double norm = 1.0 / std::sqrt(s.horizon);
  Eigen::VectorXd h(2 * s.tones);
  for (int i = 0; i < s.tones; ++i) {
    const double w = kTwoPi * s.frequencies[static_cast<std::size_t>(i)] / s.horizon;
    h(2 * i) = norm * std::cos(w * t);
    h(2 * i + 1) = norm * std::sin(w * t);
  }
  return h;
}

}  // namespace

KalmanErrors kalman_errors(const KalmanSetup& setup) {
  setup.validate();
  const int dim = 2 * setup.tones;
  const double dt = setup.dt();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(dim, dim) / setup.tones;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  double min_eigenvalue = 1.0 / setup.tones;
  double causal = 0.0;
  const double gain = std::sqrt(setup.q * dt);

  for (int j = 0; j < setup.steps; ++j) {
    const Eigen::VectorXd h = basis_at(setup, j * dt);
    causal += h.dot(cov * h) * dt;
    const Eigen::VectorXd ph = cov * h * gain;
    const double innovation = 1.0 + gain * h.dot(ph);
    cov.noalias() -= ph * ph.transpose() / innovation;
    cov = 0.5 * (cov + cov.transpose()).eval();
    eig.compute(cov, Eigen::EigenvaluesOnly);
    min_eigenvalue = std::min(min_eigenvalue, eig.eigenvalues()(0));
    if (min_eigenvalue < -1e-10) {
      throw IllConditioned("kalman: covariance eigenvalue " + std::to_string(min_eigenvalue) + " at step " +
                           std::to_string(j));
    }
  }

  double smoothed = 0.0;
  for (int j = 0; j < setup.steps; ++j) {
    const Eigen::VectorXd h = basis_at(setup, j * dt);
    smoothed += h.dot(cov * h) * dt;
  }
  return KalmanErrors{causal, smoothed, min_eigenvalue};
}

double kalman_cmmse(const KalmanSetup& setup) { return kalman_errors(setup).cmmse; }

double kalman_mmse(const KalmanSetup& setup) { return kalman_errors(setup).mmse; }

KalmanSweep kalman_dt_sweep(int tones, double q, int base_steps, int levels) {
  if (levels < 2) throw ConfigError("kalman sweep: need at least 2 levels");
  KalmanSweep sweep{};
  for (int l = 0; l < levels; ++l) {
    sweep.setups.push_back(KalmanSetup::make(tones, q, base_steps << l));
    sweep.errors.push_back(kalman_errors(sweep.setups.back()));
  }
  const auto& fine = sweep.errors[sweep.errors.size() - 1];
  const auto& coarse = sweep.errors[sweep.errors.size() - 2];
  sweep.cmmse_extrapolated = 2.0 * fine.cmmse - coarse.cmmse;
  sweep.mmse_extrapolated = 2.0 * fine.mmse - coarse.mmse;
  return sweep;
}

}  // namespace nglab

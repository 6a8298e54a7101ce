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

// Acceptance runner: one PASS/FAIL line per criterion, followed by the
// measured quantities. `--criterion N` restricts the run to one criterion;
// the exit status is nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nglab/nglab.hpp"

namespace {

using namespace nglab;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  template <class... Args>
  void note(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    details.emplace_back(buf);
  }
  void require(bool ok) { pass = pass && ok; }
};

const char* mark(bool ok) { return ok ? "ok" : "VIOLATED"; }

ScalarChannel channel(const ScalarSource& src, double q) { return ScalarChannel{src, Snr(q)}; }

// 1. Gaussian input: zero non-Gaussianity and the linear-estimator error.
Outcome gaussian_null() {
  Outcome o;
  const auto src = sources::gaussian();
  for (double q : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double d = nongaussianity(channel(src, q)).value;
    const double gap = std::abs(mmse(channel(src, q)).value - 1.0 / (1.0 + q));
    const bool ok = d <= 1e-9 && gap <= 1e-9;
    o.require(ok);
    o.note("q=%-4g D=%.3e |mmse-1/(1+q)|=%.3e  %s", q, d, gap, mark(ok));
  }
  return o;
}

// 2. Vanishing first three derivatives of D at 0.
Outcome low_order_derivatives() {
  Outcome o;
  const std::vector<int> orders{1, 2, 3};
  for (const auto& src : {sources::rademacher(), sources::uniform(), sources::exponential()}) {
    for (const auto& e : divergence_derivatives_at_zero(src, orders)) {
      const double bound = std::max(1e-4, 10.0 * e.error_estimate);
      const bool ok = std::abs(e.value) <= bound;
      o.require(ok);
      o.note("%-10s k=%d D^(k)(0)=% .6e err=%.2e bound=%.2e  %s", src.name().c_str(), e.order, e.value,
             e.error_estimate, bound, mark(ok));
    }
  }
  return o;
}

// 3. Fourth derivative against the moment formula (symmetric laws); the
// skewed law is reported only.
Outcome fourth_derivative() {
  Outcome o;
  const std::vector<int> order4{4};
  for (const auto& src : {sources::rademacher(), sources::uniform()}) {
    const auto e = divergence_derivatives_at_zero(src, order4).front();
    const double target = d4_at_zero_from_moments(src);
    const double rel = std::abs(e.value - target) / std::abs(target);
    const bool ok = rel <= 0.05;
    o.require(ok);
    o.note("%-10s D''''(0)=%.6f err=%.2e formula=%.6f rel=%.2e  %s", src.name().c_str(), e.value, e.error_estimate,
           target, rel, mark(ok));
  }
  const auto skew = sources::exponential();
  const std::vector<int> orders{3, 4};
  const auto d = divergence_derivatives_at_zero(skew, orders);
  const double m3 = skew.moment(3);
  const double m4 = skew.moment(4);
  o.note("%-10s (reported) D'''(0)=%.6f vs (EX^3)^2/2=%.6f", skew.name().c_str(), d[0].value, 0.5 * m3 * m3);
  o.note("%-10s (reported) D''''(0)=%.6f, moment formula=%.6f, with 12(EX^3)^2 in place of 2(EX^3)^2: %.6f",
         skew.name().c_str(), d[1].value, d4_at_zero_from_moments(skew),
         0.5 * (m4 * m4 - 6.0 * m4 - 12.0 * m3 * m3 + 9.0));
  return o;
}

// 1 - E tanh^2(q + sqrt(q) W), W ~ N(0, 1): the Rademacher mmse conditioned
// on X = +1, by composite Simpson over w in [-12, 12].
double rademacher_mmse_oracle(double q) {
  const int n = 24000;
  const double h = 24.0 / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = -12.0 + i * h;
    const double t = std::tanh(q + std::sqrt(q) * w);
    const double wt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += wt * t * t * std::exp(-0.5 * w * w);
  }
  return 1.0 - s * h / 3.0 / std::sqrt(2.0 * kPi);
}

// 4. Rademacher residual of the third-order expansion scales as q^4.
Outcome taylor_residual() {
  Outcome o;
  const auto src = sources::rademacher();
  std::vector<double> ratios;
  for (double q : {0.2, 0.1, 0.05, 0.025}) {
    const double m = mmse(channel(src, q), tight_quadrature()).value;
    const double oracle = rademacher_mmse_oracle(q);
    const bool agree = std::abs(m - oracle) <= 1e-11;
    o.require(agree);
    const double r = std::abs(m - (1.0 - q + q * q - 5.0 / 3.0 * q * q * q)) / std::pow(q, 4);
    ratios.push_back(r);
    o.note("q=%-6g mmse=%.15f oracle=%.15f |resid|/q^4=%.6f  %s", q, m, oracle, r, mark(agree));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double variation = *hi / *lo;
  const bool ok = *lo > 0.0 && variation <= 2.0;
  o.require(ok);
  o.note("max/min ratio=%.4f (limit 2)  %s", variation, mark(ok));
  return o;
}

// 5. Gap to the Gaussian mmse equals twice the slope of D.
Outcome divergence_mmse_identity() {
  Outcome o;
  const auto src = sources::rademacher();
  const double h = 1e-3;
  for (double q : {0.25, 0.5, 1.0, 2.0}) {
    const double dp = nongaussianity(channel(src, q + h), tight_quadrature()).value;
    const double dm = nongaussianity(channel(src, q - h), tight_quadrature()).value;
    const double slope = (dp - dm) / (2.0 * h);
    const double gap = gaussian_mmse(q) - mmse(channel(src, q), tight_quadrature()).value;
    const double diff = std::abs(gap - 2.0 * slope);
    const bool ok = diff <= 1e-4;
    o.require(ok);
    o.note("q=%-4g gap=%.10f 2D'=%.10f |diff|=%.3e  %s", q, gap, 2.0 * slope, diff, mark(ok));
  }
  return o;
}

// 6. Riccati recursion reproduces the Gaussian closed forms.
Outcome kalman_closed_forms() {
  Outcome o;
  const std::vector<std::pair<int, double>> points{{1, 2.0}, {2, 2.0}, {4, 1.0}};
  for (const auto& [n, q] : points) {
    const auto start = std::chrono::steady_clock::now();
    const auto sw = kalman_dt_sweep(n, q, 1024, 4);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double cg = std::abs(sw.cmmse_extrapolated - gaussian_cmmse(n, q));
    const double mg = std::abs(sw.mmse_extrapolated - gaussian_mmse_tone(n, q));
    const bool ok = cg <= 1e-3 && mg <= 1e-3;
    o.require(ok);
    o.note("N=%d q=%g cmmse=%.9f (target %.9f, gap %.2e) mmse=%.9f (target %.9f, gap %.2e) %.2fs  %s", n, q,
           sw.cmmse_extrapolated, gaussian_cmmse(n, q), cg, sw.mmse_extrapolated, gaussian_mmse_tone(n, q), mg,
           secs, mark(ok));
  }
  return o;
}

// 7. Fitted 1/N deficit coefficients for the unit amplitude.
Outcome rate_coefficients() {
  Outcome o;
  const auto law = AmplitudeLaw::unit();
  const auto d2 = tone_d2_at_zero(law);
  o.note("D''(0)=% .3e (err %.2e) by one-sided differences of the single-tone curve", d2.value, d2.error_estimate);
  const std::vector<int> tones{4, 8, 16, 32, 64};
  for (auto kind : {ErrorKind::Causal, ErrorKind::NonCausal}) {
    const auto fit = convergence_rate_fit(law, tones, 1.0, kind, d2.value);
    const bool ok = fit.relative_mismatch <= 0.03;
    o.require(ok);
    o.note("%-10s c1=%.6f predicted=%.6f rel=%.3e (c2=%.4f)  %s", kind == ErrorKind::Causal ? "causal" : "non-causal",
           fit.coefficient, fit.predicted, fit.relative_mismatch, fit.quadratic, mark(ok));
  }
  return o;
}

// 8. Remainder of the second-order small-q/N term decays like 1/N^2.
Outcome remainder_rate() {
  Outcome o;
  const auto law = AmplitudeLaw::unit();
  const double q = 1.0;
  const double d2 = tone_d2_at_zero(law).value;
  std::vector<double> rem;
  for (int n : {4, 8, 16, 32, 64}) {
    const double dn = dn_divergence(ToneModel::make(n, q, law), tight_quadrature()).value;
    rem.push_back(std::abs(dn - 0.5 * d2 * q * q / n));
    o.note("N=%-3d N*D(q/N)=%.6e remainder=%.6e", n, dn, rem.back());
  }
  for (std::size_t i = 1; i < rem.size(); ++i) {
    const double ratio = rem[i - 1] / rem[i];
    const bool ok = ratio >= 3.2 && ratio <= 5.0;
    o.require(ok);
    o.note("ratio N=%d->%d: %.4f (window [3.2, 5.0])  %s", 4 << (i - 1), 4 << i, ratio, mark(ok));
  }
  return o;
}

// 9. Monte Carlo against quadrature for every built-in source.
Outcome monte_carlo_oracle() {
  Outcome o;
  McConfig cfg;
  cfg.samples = 1'000'000;
  cfg.seed = 1;
  for (const auto& src : builtin_sources()) {
    for (double q : {0.5, 2.0}) {
      const auto est = mc_scalar_mmse(src, q, cfg);
      const double quad = mmse(channel(src, q)).value;
      const double z = (est.value - quad) / est.standard_error;
      const bool ok = std::abs(z) <= 3.0;
      o.require(ok);
      o.note("%-22s q=%-3g mc=%.6f se=%.2e quad=%.6f z=% .3f  %s", src.name().c_str(), q, est.value,
             est.standard_error, quad, z, mark(ok));
    }
  }
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  CLI::App app{"nglab acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s) 1-9; default all")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "Gaussian input is a null case", gaussian_null},
      {2, "D', D'', D''' vanish at q = 0", low_order_derivatives},
      {3, "D''''(0) matches the moment formula", fourth_derivative},
      {4, "third-order mmse expansion residual is O(q^4)", taylor_residual},
      {5, "gaussian_mmse - mmse = 2 dD/dq", divergence_mmse_identity},
      {6, "Riccati errors match the Gaussian closed forms", kalman_closed_forms},
      {7, "1/N deficit coefficients for unit amplitude", rate_coefficients},
      {8, "N D(q/N) remainder decays as 1/N^2", remainder_rate},
      {9, "Monte Carlo mmse within 3 standard errors", monte_carlo_oracle},
  };

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note("error: %s", e.what());
    }
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

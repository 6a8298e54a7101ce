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
#include <vector>

#include <gtest/gtest.h>

#include "nglab/errors.hpp"
#include "nglab/special.hpp"
#include "nglab/tone_channel.hpp"

namespace nglab {
namespace {

// 30-digit mpmath value for the unit amplitude at q = 1.
constexpr double kUnitToneD1 = 0.0019895892009503763;

// KL between the 2-D output of one tone and N(0, (1 + q/2) I) on a tensor
// grid. The phase average and both coordinates use the trapezoid rule,
// which is spectrally accurate for these periodic / rapidly decaying
// integrands. `magnitudes` with `weights` discretize the law of |a|.
double tensor_grid_divergence(double q, const std::vector<double>& magnitudes, const std::vector<double>& weights) {
  const int phases = 48;
  const double half_width = 10.0;
  const int n = 200;
  const double h = 2.0 * half_width / n;
  const double s = std::sqrt(q);
  const double v = 1.0 + 0.5 * q;
  double kl = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double y1 = -half_width + i * h;
    for (int j = 0; j <= n; ++j) {
      const double y2 = -half_width + j * h;
      double p = 0.0;
      for (std::size_t m = 0; m < magnitudes.size(); ++m) {
        double avg = 0.0;
        for (int k = 0; k < phases; ++k) {
          const double th = 2.0 * kPi * k / phases;
          const double d1 = y1 - s * magnitudes[m] * std::cos(th);
          const double d2 = y2 + s * magnitudes[m] * std::sin(th);
          avg += std::exp(-0.5 * (d1 * d1 + d2 * d2));
        }
        p += weights[m] * avg / phases;
      }
      p /= 2.0 * kPi;
      const double g = std::exp(-0.5 * (y1 * y1 + y2 * y2) / v) / (2.0 * kPi * v);
      if (p > 1e-300) kl += p * std::log(p / g);
    }
  }
  return kl * h * h;
}

TEST(ToneDivergence, UnitAmplitudeMatchesReferences) {
  const double radial = tone_divergence(AmplitudeLaw::unit(), 1.0).value;
  EXPECT_NEAR(radial, kUnitToneD1, 1e-12);
  EXPECT_NEAR(radial, tensor_grid_divergence(1.0, {1.0}, {1.0}), 1e-10);
}

TEST(ToneDivergence, UniformAmplitudeMatchesTensorGrid) {
  // |a| uniform on [0, sqrt 3]; composite Simpson over the magnitude.
  const int m = 60;
  const double top = std::sqrt(3.0);
  std::vector<double> mags;
  std::vector<double> w;
  for (int i = 0; i <= m; ++i) {
    mags.push_back(top * i / m);
    w.push_back(((i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0)) / (3.0 * m));
  }
  const double q = 2.0;
  const double radial = tone_divergence(AmplitudeLaw::random(sources::uniform()), q).value;
  EXPECT_NEAR(radial, tensor_grid_divergence(q, mags, w), 1e-8 + 1e-6 * radial);
}

TEST(ToneDivergence, SymmetricAmplitudesMatchUnit) {
  const double unit = tone_divergence(AmplitudeLaw::unit(), 0.7).value;
  EXPECT_NEAR(tone_divergence(parse_amplitude("rademacher"), 0.7).value, unit, 1e-14);
}

TEST(ToneDivergence, GaussianPairIsGaussian) {
  for (double q : {0.1, 1.0, 10.0}) {
    EXPECT_NEAR(tone_divergence(AmplitudeLaw::gaussian_pair(), q).value, 0.0, 1e-12) << "q=" << q;
  }
  EXPECT_EQ(tone_divergence(AmplitudeLaw::unit(), 0.0).value, 0.0);
  EXPECT_THROW(tone_divergence(AmplitudeLaw::unit(), -1.0), ConfigError);
}

// The unit-amplitude curve vanishes to fourth order: D(q)/q^2 -> 0 and
// D(q)/q^4 settles.
TEST(ToneDivergence, UnitCurveIsFourthOrderAtZero) {
  const auto law = AmplitudeLaw::unit();
  const auto cfg = tight_quadrature();
  const double d1 = tone_divergence(law, 0.2, cfg).value;
  const double d2 = tone_divergence(law, 0.1, cfg).value;
  const double d3 = tone_divergence(law, 0.05, cfg).value;
  // r(q) = D(2q)/D(q) = 16 (1 + b q + O(q^2)): the ratios climb towards 16
  // and one extrapolation step removes the linear term.
  const double r1 = d1 / d2;
  const double r2 = d2 / d3;
  EXPECT_LT(r1, r2);
  EXPECT_LT(r2, 16.0);
  EXPECT_NEAR(2.0 * r2 - r1, 16.0, 0.5);
  const auto d2_at_zero = tone_d2_at_zero(law);
  EXPECT_NEAR(d2_at_zero.value, 0.0, std::max(1e-6, 3.0 * d2_at_zero.error_estimate));
}

TEST(DivergenceCurve, CentralDifferenceWithRichardson) {
  std::vector<CurvePoint> pts;
  for (int i = 0; i <= 10; ++i) {
    const double q = 0.1 * i;
    pts.push_back({q, q * q * q, 0.0});
  }
  const DivergenceCurve curve(pts, "cubic");
  EXPECT_NEAR(curve.derivative(5).value, 0.75, 1e-13);
  EXPECT_NEAR(curve.derivative(1).value, 0.03, 0.011);  // no +/-2 neighbours
  EXPECT_THROW(static_cast<void>(curve.derivative(0)), ConfigError);
  EXPECT_THROW(static_cast<void>(curve.derivative(10)), ConfigError);
}

TEST(DivergenceCurve, Invariants) {
  EXPECT_THROW(DivergenceCurve({{0.0, 0.0, 0.0}, {0.0, 0.1, 0.0}}, "x"), ConfigError);
  EXPECT_THROW(DivergenceCurve({{0.0, 0.0, 0.0}, {0.1, -1.0, 0.0}}, "x"), ConfigError);
  EXPECT_THROW(DivergenceCurve({{0.0, 0.5, 0.0}, {0.1, 0.6, 0.0}}, "x"), ConfigError);
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto curve = tone_divergence_curve(AmplitudeLaw::unit(), grid);
  EXPECT_EQ(curve.points().size(), 3u);
  EXPECT_EQ(curve.points()[0].value, 0.0);
}

TEST(ToneModel, Validation) {
  EXPECT_THROW(ToneModel::make(0, 1.0, AmplitudeLaw::unit()), ConfigError);
  auto m = ToneModel::make(2, 1.0, AmplitudeLaw::unit());
  m.frequencies = {3, 3};
  EXPECT_THROW(m.validate(), ConfigError);
  m.frequencies = {1};
  EXPECT_THROW(m.validate(), ConfigError);
}

TEST(DnDivergence, ScalesSingleTone) {
  const auto law = AmplitudeLaw::unit();
  EXPECT_NEAR(dn_divergence(ToneModel::make(1, 1.3, law)).value, tone_divergence(law, 1.3).value, 1e-16);
  EXPECT_NEAR(dn_divergence(ToneModel::make(4, 2.0, law)).value, 4.0 * tone_divergence(law, 0.5).value, 1e-16);
}

TEST(GaussianForms, Examples) {
  EXPECT_NEAR(gaussian_cmmse(2, 2.0), 2.0 * std::log(1.5), 1e-15);
  EXPECT_NEAR(gaussian_mmse_tone(2, 2.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(gaussian_cmmse(1, 2.0), std::log(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(gaussian_mmse_tone(1, 2.0), 0.5);
  EXPECT_EQ(gaussian_cmmse(3, 0.0), 1.0);
  EXPECT_NEAR(gaussian_cmmse(1, 1e-9), 1.0, 1e-9);
  EXPECT_THROW(gaussian_cmmse(0, 1.0), ConfigError);
}

TEST(Asymptotics, Examples) {
  EXPECT_DOUBLE_EQ(cmmse_asymptotic(4, 1.0, 0.0), 1.0 - 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(mmse_asymptotic(4, 1.0, 0.0), 1.0 - 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(cmmse_asymptotic(2, 1.0, 0.25), 0.75);
}

TEST(ExactErrors, GaussianPairMatchesClosedForms) {
  const auto law = AmplitudeLaw::gaussian_pair();
  for (int n : {1, 2, 4}) {
    for (double q : {0.5, 2.0}) {
      const auto model = ToneModel::make(n, q, law);
      EXPECT_NEAR(cmmse_exact(model).value, gaussian_cmmse(n, q), 1e-12);
      EXPECT_NEAR(mmse_exact(model).value, gaussian_mmse_tone(n, q), 1e-12);
    }
  }
}

TEST(ExactErrors, UnitAmplitudeSingleTone) {
  const auto law = AmplitudeLaw::unit();
  const double q = 1.0;
  const auto model = ToneModel::make(1, q, law);
  EXPECT_NEAR(cmmse_exact(model).value, 2.0 * std::log(1.5) - 2.0 * kUnitToneD1, 1e-11);
  // Five-point stencil of the divergence, independent of the library's curve.
  const double h = 2e-3;
  auto d = [&](double x) { return tone_divergence(law, x, tight_quadrature()).value; };
  const double slope = (-d(q + 2 * h) + 8 * d(q + h) - 8 * d(q - h) + d(q - 2 * h)) / (12.0 * h);
  EXPECT_NEAR(mmse_exact(model).value, 2.0 / 3.0 - 2.0 * slope, 1e-7);
  EXPECT_EQ(cmmse_exact(ToneModel::make(3, 0.0, law)).value, 1.0);
  EXPECT_EQ(mmse_exact(ToneModel::make(3, 0.0, law)).value, 1.0);
}

TEST(ExactErrors, OrderedAndBoundedByGaussian) {
  for (const auto& law : {AmplitudeLaw::unit(), AmplitudeLaw::random(sources::uniform()),
                          AmplitudeLaw::random(sources::exponential())}) {
    for (int n : {1, 2, 8}) {
      for (double q : {0.5, 2.0, 8.0}) {
        const auto model = ToneModel::make(n, q, law);
        const double c = cmmse_exact(model).value;
        const double m = mmse_exact(model).value;
        EXPECT_GE(m, 0.0) << law.name();
        EXPECT_LE(m, c + 1e-12) << law.name() << " N=" << n << " q=" << q;
        EXPECT_LE(c, 1.0);
        EXPECT_LE(c, gaussian_cmmse(n, q) + 1e-12);
        EXPECT_LE(m, gaussian_mmse_tone(n, q) + 1e-9);
      }
    }
  }
}

TEST(RateFit, GaussianPairCoefficients) {
  const std::vector<int> tones{4, 8, 16, 32, 64};
  const auto law = AmplitudeLaw::gaussian_pair();
  const auto c = convergence_rate_fit(law, tones, 1.0, ErrorKind::Causal, 0.0);
  const auto m = convergence_rate_fit(law, tones, 1.0, ErrorKind::NonCausal, 0.0);
  EXPECT_NEAR(c.coefficient, 0.25, 0.0025);
  EXPECT_NEAR(m.coefficient, 0.5, 0.005);
  EXPECT_EQ(c.points.size(), tones.size());
  EXPECT_NEAR(c.predicted, 0.25, 0.0);
}

TEST(RateFit, RejectsThinSweeps) {
  const auto law = AmplitudeLaw::unit();
  EXPECT_THROW(convergence_rate_fit(law, std::vector<int>{4, 8, 64}, 1.0, ErrorKind::Causal, 0.0), ConfigError);
  EXPECT_THROW(convergence_rate_fit(law, std::vector<int>{4, 8, 16, 32}, 1.0, ErrorKind::Causal, 0.0), ConfigError);
  EXPECT_THROW(convergence_rate_fit(law, std::vector<int>{1, 2, 4, 16}, 0.0, ErrorKind::Causal, 0.0), ConfigError);
}

}  // namespace
}  // namespace nglab

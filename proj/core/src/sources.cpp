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

#include "nglab/sources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "nglab/errors.hpp"
#include "nglab/special.hpp"

namespace nglab {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::DiscreteAtoms: return "discrete-atoms";
    case SourceKind::Gaussian: return "gaussian";
    case SourceKind::GaussianMixture: return "gaussian-mixture";
    case SourceKind::Uniform: return "uniform";
    case SourceKind::StandardizedCustom: return "standardized-custom";
  }
  return "unknown";
}

namespace {

std::vector<double> cumulative_of(const std::vector<double>& weights) {
  std::vector<double> c(weights.size());
  std::partial_sum(weights.begin(), weights.end(), c.begin());
  if (!c.empty()) c.back() = 1.0;
  return c;
}

std::size_t pick(const std::vector<double>& cumulative, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

void check_weights(const std::vector<double>& w, const char* what) {
  if (w.empty()) throw ConfigError(std::string(what) + ": empty");
  double sum = 0.0;
  for (double p : w) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError(std::string(what) + ": negative or non-finite weight");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError(std::string(what) + ": weights must sum to 1");
}

// Raw moments 1..4 of N(mu, sd^2).
std::array<double, 4> normal_moments(double mu, double sd) {
  const double v = sd * sd;
  return {mu, mu * mu + v, mu * mu * mu + 3.0 * mu * v, mu * mu * mu * mu + 6.0 * mu * mu * v + 3.0 * v * v};
}

double log_sum_exp_shift(const std::vector<double>& e) {
  return *std::max_element(e.begin(), e.end());
}

}  // namespace

Law::Law(SourceKind kind, std::variant<AtomRep, MixtureRep, DensityRep> rep, std::array<double, 4> moments)
    : kind_(kind), rep_(std::move(rep)), moments_(moments) {}

Law Law::atoms(std::vector<Atom> atoms) {
  std::vector<double> w;
  w.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value)) throw ConfigError("atoms: non-finite value");
    w.push_back(a.probability);
  }
  check_weights(w, "atoms");
  std::array<double, 4> m{};
  for (const auto& a : atoms) {
    double xk = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      xk *= a.value;
      m[k] += a.probability * xk;
    }
  }
  return Law(SourceKind::DiscreteAtoms, AtomRep{std::move(atoms), cumulative_of(w)}, m);
}

Law Law::normal(double mean, double variance) {
  if (!(variance > 0.0) || !std::isfinite(mean) || !std::isfinite(variance)) {
    throw ConfigError("normal: variance must be positive and parameters finite");
  }
  return mixture({{1.0, mean, std::sqrt(variance)}});
}

Law Law::mixture(std::vector<GaussianComponent> components) {
  std::vector<double> w;
  for (const auto& c : components) {
    if (!(c.sd > 0.0) || !std::isfinite(c.mean) || !std::isfinite(c.sd)) {
      throw ConfigError("mixture: component sd must be positive and parameters finite");
    }
    w.push_back(c.weight);
  }
  check_weights(w, "mixture");
  std::array<double, 4> m{};
  for (const auto& c : components) {
    const auto cm = normal_moments(c.mean, c.sd);
    for (std::size_t k = 0; k < 4; ++k) m[k] += c.weight * cm[k];
  }
  const SourceKind kind = components.size() == 1 ? SourceKind::Gaussian : SourceKind::GaussianMixture;
  return Law(kind, MixtureRep{std::move(components), cumulative_of(w)}, m);
}

Law Law::uniform(double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("uniform: need lo < hi");
  std::array<double, 4> m{};
  for (int k = 1; k <= 4; ++k) {
    m[static_cast<std::size_t>(k - 1)] = (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / ((k + 1) * (hi - lo));
  }
  const double density = 1.0 / (hi - lo);
  DensityRep rep{std::make_shared<const RealFunction>([density](double) { return density; }), Interval{lo, hi}, {},
                 [lo, hi](Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }};
  return Law(SourceKind::Uniform, std::move(rep), m);
}

Law Law::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ConfigError("exponential: rate must be positive");
  const std::array<double, 4> m{1.0 / rate, 2.0 / (rate * rate), 6.0 / std::pow(rate, 3), 24.0 / std::pow(rate, 4)};
  DensityRep rep{std::make_shared<const RealFunction>([rate](double x) { return rate * std::exp(-rate * x); }),
                 Interval{0.0, 60.0 / rate}, {},
                 [rate](Rng& rng) { return std::exponential_distribution<double>(rate)(rng); }};
  return Law(SourceKind::StandardizedCustom, std::move(rep), m);
}

Law Law::density(RealFunction pdf, Interval support, Sampler sampler, std::vector<double> breakpoints) {
  if (support.empty() || !std::isfinite(support.lo) || !std::isfinite(support.hi)) {
    throw ConfigError("density: support must be a finite nonempty interval");
  }
  if (!pdf || !sampler) throw ConfigError("density: pdf and sampler are required");
  QuadratureConfig cfg;
  cfg.relative_tolerance = 1e-13;
  cfg.absolute_tolerance = 1e-300;
  const double mass = integrate(pdf, support, cfg, breakpoints).value;
  if (std::abs(mass - 1.0) > 1e-9) throw ConfigError("density: pdf does not integrate to 1 over its support");
  std::array<double, 4> m{};
  for (int k = 1; k <= 4; ++k) {
    // Odd moments may vanish. The absolute floor is relative to E|X|^k and sits
    // above the integrator round-off floor of 50 eps E|X|^k.
    const double scale =
        integrate([&pdf, k](double x) { return std::pow(std::abs(x), k) * pdf(x); }, support, cfg, breakpoints).value;
    QuadratureConfig signed_cfg = cfg;
    signed_cfg.absolute_tolerance = 1e-12 * scale;
    m[static_cast<std::size_t>(k - 1)] =
        integrate([&pdf, k](double x) { return std::pow(x, k) * pdf(x); }, support, signed_cfg, breakpoints).value /
        mass;
  }
  DensityRep rep{std::make_shared<const RealFunction>(std::move(pdf)), support, std::move(breakpoints),
                 std::move(sampler)};
  return Law(SourceKind::StandardizedCustom, std::move(rep), m);
}

double Law::raw_moment(int k) const {
  if (k < 1 || k > 4) throw ConfigError("moment order must be in 1..4");
  return moments_[static_cast<std::size_t>(k - 1)];
}

double Law::variance() const { return moments_[1] - moments_[0] * moments_[0]; }

Law Law::affine(double shift, double scale) const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(shift)) {
    throw ConfigError("affine: scale must be positive and finite");
  }
  // E[((X - shift)/scale)^k] by the binomial expansion of the raw moments.
  std::array<double, 5> raw{1.0, moments_[0], moments_[1], moments_[2], moments_[3]};
  std::array<double, 4> m{};
  for (int k = 1; k <= 4; ++k) {
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      sum += binom * raw[static_cast<std::size_t>(j)] * std::pow(-shift, k - j);
      binom = binom * (k - j) / (j + 1);
    }
    m[static_cast<std::size_t>(k - 1)] = sum / std::pow(scale, k);
  }

  return std::visit(
      [&](const auto& rep) -> Law {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomRep>) {
          AtomRep out = rep;
          for (auto& a : out.atoms) a.value = (a.value - shift) / scale;
          return Law(kind_, std::move(out), m);
        } else if constexpr (std::is_same_v<T, MixtureRep>) {
          MixtureRep out = rep;
          for (auto& c : out.components) {
            c.mean = (c.mean - shift) / scale;
            c.sd /= scale;
          }
          return Law(kind_, std::move(out), m);
        } else {
          auto base = rep.pdf;
          DensityRep out;
          out.pdf = std::make_shared<const RealFunction>(
              [base, shift, scale](double x) { return scale * (*base)(shift + scale * x); });
          out.support = Interval{(rep.support.lo - shift) / scale, (rep.support.hi - shift) / scale};
          for (double b : rep.breakpoints) out.breakpoints.push_back((b - shift) / scale);
          out.sampler = [sampler = rep.sampler, shift, scale](Rng& rng) { return (sampler(rng) - shift) / scale; };
          return Law(kind_, std::move(out), m);
        }
      },
      rep_);
}

Interval Law::effective_support(double tail_width) const {
  return std::visit(
      [&](const auto& rep) -> Interval {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomRep>) {
          const auto [lo, hi] = std::minmax_element(rep.atoms.begin(), rep.atoms.end(),
                                                    [](const Atom& a, const Atom& b) { return a.value < b.value; });
          return Interval{lo->value, hi->value};
        } else if constexpr (std::is_same_v<T, MixtureRep>) {
          Interval s{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
          for (const auto& c : rep.components) {
            s.lo = std::min(s.lo, c.mean - tail_width * c.sd);
            s.hi = std::max(s.hi, c.mean + tail_width * c.sd);
          }
          return s;
        } else {
          return rep.support;
        }
      },
      rep_);
}

double Law::expect(const RealFunction& f, const std::vector<double>& hints, const QuadratureConfig& cfg) const {
  return std::visit(
      [&](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomRep>) {
          double sum = 0.0;
          for (const auto& a : rep.atoms) sum += a.probability * f(a.value);
          return sum;
        } else if constexpr (std::is_same_v<T, MixtureRep>) {
          double sum = 0.0;
          for (const auto& c : rep.components) {
            std::vector<double> z_hints{0.0};
            for (double h : hints) z_hints.push_back((h - c.mean) / c.sd);
            auto integrand = [&](double z) { return normal_pdf(z) * f(c.mean + c.sd * z); };
            sum += c.weight * integrate(integrand, gaussian_window(0.0, 1.0, cfg.tail_width), cfg, z_hints).value;
          }
          return sum;
        } else {
          std::vector<double> cuts = rep.breakpoints;
          cuts.insert(cuts.end(), hints.begin(), hints.end());
          const auto& pdf = *rep.pdf;
          auto integrand = [&](double x) { return pdf(x) * f(x); };
          return integrate(integrand, rep.support, cfg, cuts).value;
        }
      },
      rep_);
}

Smoothed Law::smooth(double y, double gain, const QuadratureConfig& cfg) const {
  if (gain == 0.0) return Smoothed{-0.5 * y * y, mean()};
  return std::visit(
      [&](const auto& rep) -> Smoothed {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomRep>) {
          std::vector<double> e;
          e.reserve(rep.atoms.size());
          for (const auto& a : rep.atoms) {
            const double r = y - gain * a.value;
            e.push_back(a.probability > 0.0 ? std::log(a.probability) - 0.5 * r * r
                                            : -std::numeric_limits<double>::infinity());
          }
          const double shift = log_sum_exp_shift(e);
          double s0 = 0.0;
          double s1 = 0.0;
          for (std::size_t i = 0; i < e.size(); ++i) {
            const double w = std::exp(e[i] - shift);
            s0 += w;
            s1 += w * rep.atoms[i].value;
          }
          return Smoothed{shift + std::log(s0), s1 / s0};
        } else if constexpr (std::is_same_v<T, MixtureRep>) {
          std::vector<double> e;
          std::vector<double> means;
          for (const auto& c : rep.components) {
            const double v = 1.0 + gain * gain * c.sd * c.sd;
            const double r = y - gain * c.mean;
            e.push_back(std::log(c.weight) - 0.5 * std::log(v) - 0.5 * r * r / v);
            means.push_back(c.mean + gain * c.sd * c.sd * r / v);
          }
          const double shift = log_sum_exp_shift(e);
          double s0 = 0.0;
          double s1 = 0.0;
          for (std::size_t i = 0; i < e.size(); ++i) {
            const double w = std::exp(e[i] - shift);
            s0 += w;
            s1 += w * means[i];
          }
          return Smoothed{shift + std::log(s0), s1 / s0};
        } else {
          const auto& pdf = *rep.pdf;
          const Interval sup = rep.support;
          const double peak = std::clamp(y / gain, sup.lo, sup.hi);
          const double r0 = y - gain * peak;
          const double offset = 0.5 * r0 * r0;
          const double width = 1.0 / gain;
          std::vector<double> cuts = rep.breakpoints;
          for (double k : {-8.0, -4.0, 0.0, 4.0, 8.0}) cuts.push_back(peak + k * width);
          QuadratureConfig inner = cfg;
          inner.relative_tolerance = std::max(1e-13, std::min(cfg.relative_tolerance, 1e-10));
          inner.absolute_tolerance = std::numeric_limits<double>::min();
          auto kernel = [&](double x) {
            const double r = y - gain * x;
            return pdf(x) * std::exp(offset - 0.5 * r * r);
          };
          const Estimate m0 = integrate(kernel, sup, inner, cuts);
          inner.absolute_tolerance =
              std::max(std::numeric_limits<double>::min(),
                       inner.relative_tolerance * m0.value * std::max({1.0, std::abs(sup.lo), std::abs(sup.hi)}));
          const Estimate m1 = integrate([&](double x) { return x * kernel(x); }, sup, inner, cuts);
          return Smoothed{std::log(m0.value) - offset, m1.value / m0.value};
        }
      },
      rep_);
}

double Law::sample(Rng& rng) const {
  return std::visit(
      [&](const auto& rep) -> double {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, AtomRep>) {
          return rep.atoms[pick(rep.cumulative, rng)].value;
        } else if constexpr (std::is_same_v<T, MixtureRep>) {
          const auto& c = rep.components[pick(rep.cumulative, rng)];
          return c.mean + c.sd * std::normal_distribution<double>(0.0, 1.0)(rng);
        } else {
          return rep.sampler(rng);
        }
      },
      rep_);
}

const std::vector<Atom>* Law::atoms_or_null() const {
  if (const auto* rep = std::get_if<AtomRep>(&rep_)) return &rep->atoms;
  return nullptr;
}

ScalarSource::ScalarSource(Law law, std::string name) : law_(std::move(law)), name_(std::move(name)) {
  if (std::abs(law_.raw_moment(1)) > 1e-12 || std::abs(law_.raw_moment(2) - 1.0) > 1e-12) {
    throw ConfigError("source '" + name_ + "' is not standardized (need EX = 0, EX^2 = 1)");
  }
}

double ScalarSource::moment(int k) const { return law_.raw_moment(k); }

std::vector<double> ScalarSource::sample(Rng& rng, std::size_t n) const {
  std::vector<double> out(n);
  for (auto& x : out) x = law_.sample(rng);
  return out;
}

ScalarSource standardize(const Law& raw, std::string name) {
  const double mean = raw.mean();
  const double var = raw.variance();
  if (!(var > 1e-14 * std::max(1.0, raw.raw_moment(2)))) {
    throw ZeroVariance("standardize: law has zero variance");
  }
  return ScalarSource(raw.affine(mean, std::sqrt(var)), std::move(name));
}

namespace sources {

ScalarSource rademacher() { return ScalarSource(Law::atoms({{-1.0, 0.5}, {1.0, 0.5}}), "rademacher"); }

ScalarSource gaussian() { return ScalarSource(Law::normal(0.0, 1.0), "gaussian"); }

ScalarSource uniform() { return standardize(Law::uniform(-1.0, 1.0), "uniform"); }

ScalarSource exponential() { return standardize(Law::exponential(1.0), "expstd"); }

ScalarSource mixture(double w, double mu1, double sigma1, double mu2, double sigma2) {
  std::string name = "mix:";
  for (double v : {w, mu1, sigma1, mu2, sigma2}) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    if (name.back() != ':') name += ',';
    name += buf;
  }
  return standardize(Law::mixture({{w, mu1, sigma1}, {1.0 - w, mu2, sigma2}}), std::move(name));
}

}  // namespace sources

std::vector<ScalarSource> builtin_sources() {
  return {sources::rademacher(), sources::gaussian(), sources::uniform(), sources::exponential(),
          sources::mixture(0.3, 2.0, 0.7, -1.0, 0.7)};
}

AmplitudeLaw::AmplitudeLaw(Kind kind, Law law, std::string name)
    : kind_(kind), law_(std::move(law)), name_(std::move(name)) {}

AmplitudeLaw AmplitudeLaw::unit() { return AmplitudeLaw(Kind::Unit, Law::atoms({{1.0, 1.0}}), "unit"); }

AmplitudeLaw AmplitudeLaw::gaussian_pair() {
  // |a|^2 ~ Exp(1): Rayleigh density 2 a exp(-a^2), truncated at exp(-60).
  auto pdf = [](double a) { return 2.0 * a * std::exp(-a * a); };
  auto sampler = [](Rng& rng) { return std::sqrt(std::exponential_distribution<double>(1.0)(rng)); };
  return AmplitudeLaw(Kind::GaussianPair, Law::density(pdf, Interval{0.0, std::sqrt(60.0)}, sampler, {1.0, 2.0}),
                      "gaussian-pair");
}

AmplitudeLaw AmplitudeLaw::random(ScalarSource source) {
  std::string name = source.name();
  return AmplitudeLaw(Kind::Random, source.law(), std::move(name));
}

double AmplitudeLaw::expect_magnitude(const RealFunction& g, const std::vector<double>& hints,
                                      const QuadratureConfig& cfg) const {
  std::vector<double> both = hints;
  for (double h : hints) both.push_back(-h);
  return law_.expect([&g](double a) { return g(std::abs(a)); }, both, cfg);
}

Interval AmplitudeLaw::magnitude_support(double tail_width) const {
  const Interval s = law_.effective_support(tail_width);
  if (s.lo >= 0.0) return s;
  if (s.hi <= 0.0) return Interval{-s.hi, -s.lo};
  return Interval{0.0, std::max(-s.lo, s.hi)};
}

double AmplitudeLaw::sample_magnitude(Rng& rng) const { return std::abs(law_.sample(rng)); }

}  // namespace nglab

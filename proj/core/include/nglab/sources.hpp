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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nglab/quadrature.hpp"

namespace nglab {

using Rng = std::mt19937_64;

/// An explicitly seeded stream; distinct `stream` indices give independent
/// generators derived from the same master seed.
Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0);

enum class SourceKind { DiscreteAtoms, Gaussian, GaussianMixture, Uniform, StandardizedCustom };

std::string_view to_string(SourceKind kind);

struct Atom {
  double value;
  double probability;
};

struct GaussianComponent {
  double weight;
  double mean;
  double sd;
};

using Sampler = std::function<double(Rng&)>;
using RealFunction = std::function<double(double)>;

/// log E[exp(-(y - gain X)^2 / 2)] and E[X | y] under that exponential tilt.
/// For gain = sqrt(q) these are the log output density of Y = W + sqrt(q) X
/// (up to log sqrt(2 pi)) and the Bayes estimate of X.
struct Smoothed {
  double log_mass;
  double mean;
};

/// A law on the real line: finitely many atoms, a Gaussian mixture, or a
/// density on a finite (possibly truncated) support.
class Law {
 public:
  static Law atoms(std::vector<Atom> atoms);
  static Law normal(double mean, double variance);
  static Law mixture(std::vector<GaussianComponent> components);
  static Law uniform(double lo, double hi);
  /// Exponential law; the support is truncated where the survival drops to e^-60.
  static Law exponential(double rate);
  /// Custom density. Moments are obtained by quadrature over `support`.
  static Law density(RealFunction pdf, Interval support, Sampler sampler,
                     std::vector<double> breakpoints = {});

  [[nodiscard]] SourceKind kind() const { return kind_; }
  /// Raw moment E X^k, k = 1..4.
  [[nodiscard]] double raw_moment(int k) const;
  [[nodiscard]] double mean() const { return raw_moment(1); }
  [[nodiscard]] double variance() const;

  /// Law of (X - shift) / scale, scale > 0.
  [[nodiscard]] Law affine(double shift, double scale) const;

  /// Smallest interval carrying all but ~exp(-tail_width^2 / 2) of the mass.
  [[nodiscard]] Interval effective_support(double tail_width) const;

  /// E f(X); `hints` are points where f varies quickly.
  [[nodiscard]] double expect(const RealFunction& f, const std::vector<double>& hints,
                              const QuadratureConfig& cfg) const;

  [[nodiscard]] Smoothed smooth(double y, double gain, const QuadratureConfig& cfg) const;

  [[nodiscard]] double sample(Rng& rng) const;

  [[nodiscard]] const std::vector<Atom>* atoms_or_null() const;

 private:
  struct AtomRep {
    std::vector<Atom> atoms;
    std::vector<double> cumulative;
  };
  struct MixtureRep {
    std::vector<GaussianComponent> components;
    std::vector<double> cumulative;
  };
  struct DensityRep {
    std::shared_ptr<const RealFunction> pdf;
    Interval support;
    std::vector<double> breakpoints;
    Sampler sampler;
  };

  Law(SourceKind kind, std::variant<AtomRep, MixtureRep, DensityRep> rep, std::array<double, 4> moments);

  SourceKind kind_;
  std::variant<AtomRep, MixtureRep, DensityRep> rep_;
  std::array<double, 4> moments_;
};

/// A standardized input law: E X = 0 and E X^2 = 1 to within 1e-12.
/// Immutable once constructed.
class ScalarSource {
 public:
  /// Throws ConfigError unless `law` is already standardized.
  ScalarSource(Law law, std::string name);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] SourceKind kind() const { return law_.kind(); }
  [[nodiscard]] const Law& law() const { return law_; }

  /// E X^k for k = 1..4 (cached at construction).
  [[nodiscard]] double moment(int k) const;

  [[nodiscard]] Smoothed smooth(double y, double gain, const QuadratureConfig& cfg) const {
    return law_.smooth(y, gain, cfg);
  }
  [[nodiscard]] Interval effective_support(double tail_width) const {
    return law_.effective_support(tail_width);
  }
  [[nodiscard]] double sample(Rng& rng) const { return law_.sample(rng); }
  [[nodiscard]] std::vector<double> sample(Rng& rng, std::size_t n) const;

 private:
  Law law_;
  std::string name_;
};

/// Affine standardization to zero mean and unit variance. Throws
/// ZeroVariance for degenerate laws.
ScalarSource standardize(const Law& raw, std::string name = "custom");

namespace sources {
ScalarSource rademacher();
ScalarSource gaussian();
ScalarSource uniform();
ScalarSource exponential();
/// Two-component mixture w N(mu1, sigma1^2) + (1 - w) N(mu2, sigma2^2), standardized.
ScalarSource mixture(double w, double mu1, double sigma1, double mu2, double sigma2);
}  // namespace sources

/// Every built-in standardized source, in a fixed order.
std::vector<ScalarSource> builtin_sources();

/// Parses "rademacher", "gaussian", "uniform", "expstd" or
/// "mix:w,mu1,sigma1,mu2,sigma2". Throws ConfigError on malformed input.
ScalarSource parse_source(std::string_view spec);

/// Per-tone amplitude law. Only |a| matters once the phase is uniform.
///
/// The zero-mean condition applies to the tone signal a cos(wt + theta),
/// which is zero-mean for any amplitude law because of the uniform phase;
/// the unit amplitude a = 1 is therefore admitted.
class AmplitudeLaw {
 public:
  enum class Kind { Unit, GaussianPair, Random };

  static AmplitudeLaw unit();
  /// Independent N(0, 1/2) in-phase and quadrature amplitudes per tone, i.e. a
  /// Rayleigh magnitude with E a^2 = 1. The tone output is then Gaussian.
  static AmplitudeLaw gaussian_pair();
  static AmplitudeLaw random(ScalarSource source);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] double second_moment() const { return 1.0; }

  /// E g(|a|).
  [[nodiscard]] double expect_magnitude(const RealFunction& g, const std::vector<double>& hints,
                                        const QuadratureConfig& cfg) const;
  /// Range of |a| carrying all but ~exp(-tail_width^2 / 2) of the mass.
  [[nodiscard]] Interval magnitude_support(double tail_width) const;
  [[nodiscard]] double sample_magnitude(Rng& rng) const;

 private:
  AmplitudeLaw(Kind kind, Law law, std::string name);

  Kind kind_;
  Law law_;
  std::string name_;
};

/// "unit" (or "one"), "gaussian" (the Gaussian pair), or any scalar source spec.
AmplitudeLaw parse_amplitude(std::string_view spec);

}  // namespace nglab

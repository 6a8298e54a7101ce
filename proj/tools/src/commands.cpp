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

#include "nglab/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "nglab/ct_verify.hpp"
#include "nglab/errors.hpp"
#include "nglab/parallel.hpp"
#include "nglab/scalar_channel.hpp"
#include "nglab/sources.hpp"
#include "nglab/tone_channel.hpp"

namespace nglab::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

QuadratureConfig with_tolerance(QuadratureConfig cfg, const RunConfig& config) {
  if (config.tolerance) cfg.relative_tolerance = *config.tolerance;
  return cfg;
}

struct ScalarRow {
  Estimate mmse;
  double taylor = 0.0;
  Estimate divergence;
};

struct ToneRow {
  int tones = 0;
  double q = 0.0;
  Estimate cmmse;
  Estimate mmse;
};

}  // namespace

Table cmd_scalar(const RunConfig& config) {
  const ScalarSource src = parse_source(config.source);
  const auto grid = config.grid->points();
  const QuadratureConfig cfg = with_tolerance(default_quadrature(), config);

  const auto rows = parallel_map<ScalarRow>(grid.size(), [&](std::size_t i) {
    const ScalarChannel ch{src, Snr(grid[i])};
    return ScalarRow{mmse(ch, cfg), mmse_taylor3(src, grid[i]), nongaussianity(ch, cfg)};
  });

  Table t;
  t.columns = {"source",          "q",          "mmse_quadrature",      "mmse_quadrature_error",
               "mmse_taylor3",    "gaussian_mmse", "nongaussianity",   "nongaussianity_error",
               "taylor_residual", "taylor_residual_over_q4", "gaussian_gap"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = grid[i];
    const auto& r = rows[i];
    const double residual = r.mmse.value - r.taylor;
    const double gm = gaussian_mmse(q);
    t.add({src.name(), q, r.mmse.value, r.mmse.error, r.taylor, gm, r.divergence.value, r.divergence.error, residual,
           q > 0.0 ? residual / std::pow(q, 4) : kNaN, gm - r.mmse.value});
  }
  return t;
}

Table cmd_derivatives(const RunConfig& config) {
  const ScalarSource src = parse_source(config.source);
  const std::vector<int> orders{1, 2, 3, 4};
  const auto est = divergence_derivatives_at_zero(src, orders, default_divergence_derivative_config(),
                                                  with_tolerance(tight_quadrature(), config));
  Table t;
  t.columns = {"source", "order", "value", "error_estimate", "step_used", "moment_formula", "abs_difference"};
  for (const auto& e : est) {
    const double formula = e.order == 4 ? d4_at_zero_from_moments(src) : 0.0;
    t.add({src.name(), std::int64_t{e.order}, e.value, e.error_estimate, e.step_used, formula,
           std::abs(e.value - formula)});
  }
  return t;
}

Table cmd_tones(const RunConfig& config) {
  const AmplitudeLaw law = parse_amplitude(config.amplitude);
  const auto grid = config.grid->points();
  const QuadratureConfig cfg = with_tolerance(default_quadrature(), config);
  const double d2 = tone_d2_at_zero(law).value;

  std::vector<ToneRow> points;
  for (double q : grid) {
    for (int n : config.tones) points.push_back(ToneRow{n, q, {}, {}});
  }
  const auto rows = parallel_map<ToneRow>(points.size(), [&](std::size_t i) {
    ToneRow r = points[i];
    const ToneModel model = ToneModel::make(r.tones, r.q, law);
    r.cmmse = cmmse_exact(model, cfg);
    r.mmse = mmse_exact(model, cfg);
    return r;
  });

  Table t;
  t.columns = {"amplitude",         "N",
               "q",                 "cmmse_exact",
               "cmmse_error",       "mmse_exact",
               "mmse_error",        "gaussian_cmmse",
               "gaussian_mmse",     "cmmse_asymptotic",
               "mmse_asymptotic",   "cmmse_deficit_scaled",
               "mmse_deficit_scaled", "d2_at_zero"};
  for (const auto& r : rows) {
    const double scale = r.q > 0.0 ? r.tones / r.q : kNaN;
    t.add({law.name(), std::int64_t{r.tones}, r.q, r.cmmse.value, r.cmmse.error, r.mmse.value, r.mmse.error,
           gaussian_cmmse(r.tones, r.q), gaussian_mmse_tone(r.tones, r.q), cmmse_asymptotic(r.tones, r.q, d2),
           mmse_asymptotic(r.tones, r.q, d2), (1.0 - r.cmmse.value) * scale, (1.0 - r.mmse.value) * scale, d2});
  }
  return t;
}

Table cmd_kalman(const RunConfig& config) {
  const auto grid = config.grid->points();
  std::vector<std::pair<int, double>> points;
  for (double q : grid) {
    for (int n : config.tones) points.emplace_back(n, q);
  }
  const auto sweeps = parallel_map<KalmanSweep>(points.size(), [&](std::size_t i) {
    return kalman_dt_sweep(points[i].first, points[i].second, config.steps, config.levels);
  });

  Table t;
  t.columns = {"stage",        "N",           "q",         "steps",     "dt",        "cmmse",
               "mmse",         "cmmse_target", "mmse_target", "cmmse_gap", "mmse_gap", "min_eigenvalue"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [n, q] = points[i];
    const double ct = gaussian_cmmse(n, q);
    const double mt = gaussian_mmse_tone(n, q);
    const auto& sw = sweeps[i];
    double min_eig = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < sw.setups.size(); ++l) {
      const auto& e = sw.errors[l];
      min_eig = std::min(min_eig, e.min_eigenvalue);
      t.add({std::string("recursion"), std::int64_t{n}, q, std::int64_t{sw.setups[l].steps}, sw.setups[l].dt(),
             e.cmmse, e.mmse, ct, mt, e.cmmse - ct, e.mmse - mt, e.min_eigenvalue});
    }
    t.add({std::string("extrapolated"), std::int64_t{n}, q, std::int64_t{0}, 0.0, sw.cmmse_extrapolated,
           sw.mmse_extrapolated, ct, mt, sw.cmmse_extrapolated - ct, sw.mmse_extrapolated - mt, min_eig});
  }
  return t;
}

Table cmd_mc_check(const RunConfig& config) {
  const std::vector<ScalarSource> srcs =
      config.source == "all" ? builtin_sources() : std::vector<ScalarSource>{parse_source(config.source)};
  const auto grid = config.grid->points();
  const QuadratureConfig cfg = with_tolerance(default_quadrature(), config);
  const McConfig mc{config.samples, config.seed, config.stratified};
  mc.validate();

  Table t;
  t.columns = {"source", "q", "samples", "mc_mmse", "standard_error", "quadrature_mmse", "z", "within_3se"};
  // Each estimate already spreads its chunks over the worker pool.
  for (const auto& src : srcs) {
    for (double q : grid) {
      const auto est = mc_scalar_mmse(src, q, mc, cfg);
      const double quad = mmse(ScalarChannel{src, Snr(q)}, cfg).value;
      const double diff = est.value - quad;
      double z = 0.0;
      if (est.standard_error > 0.0) {
        z = diff / est.standard_error;
      } else if (diff != 0.0) {
        z = std::copysign(std::numeric_limits<double>::infinity(), diff);
      }
      t.add({src.name(), q, static_cast<std::int64_t>(est.samples), est.value, est.standard_error, quad, z,
             std::int64_t{std::abs(z) <= 3.0 ? 1 : 0}});
    }
  }
  return t;
}

Table run_command(const RunConfig& config) {
  switch (config.command) {
    case Command::Scalar:
      return cmd_scalar(config);
    case Command::Derivatives:
      return cmd_derivatives(config);
    case Command::Tones:
      return cmd_tones(config);
    case Command::Kalman:
      return cmd_kalman(config);
    case Command::McCheck:
      return cmd_mc_check(config);
  }
  throw ConfigError("unknown command");
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-Gaussianity and estimation-error toolkit for Gaussian-noise channels", "nglab"};
  app.require_subcommand(1);

  RunConfig config;
  std::string grid_text;
  std::string tones_text;
  std::string format_text = "csv";
  double tolerance = 0.0;

  auto common = [&](CLI::App* sub, bool has_source, bool has_grid, bool has_tones) {
    if (has_source) sub->add_option("--source", config.source, "Input law: rademacher|gaussian|uniform|expstd|mix:w,m1,s1,m2,s2");
    if (has_grid) sub->add_option("--q-grid", grid_text, "start:stop:count[:lin|log]");
    if (has_tones) sub->add_option("--n-list", tones_text, "Comma-separated tone counts");
    sub->add_option("--tol", tolerance, "Quadrature relative tolerance");
    sub->add_option("--seed", config.seed, "Master seed");
    sub->add_option("--out", config.out, "Output file (default stdout)");
    sub->add_option("--format", format_text, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* scalar = app.add_subcommand("scalar", "MMSE, expansion and non-Gaussianity over a q-grid");
  common(scalar, true, true, false);
  auto* derivs = app.add_subcommand("derivatives", "Derivatives of the non-Gaussianity at q = 0");
  common(derivs, true, false, false);
  auto* tones = app.add_subcommand("tones", "Tone-model errors over N and q");
  common(tones, false, true, true);
  tones->add_option("--amplitude", config.amplitude, "unit|gaussian|<source spec>");
  auto* kalman = app.add_subcommand("kalman", "Riccati errors under dt-halving");
  common(kalman, false, true, true);
  kalman->add_option("--steps", config.steps, "Steps on the coarsest grid");
  kalman->add_option("--levels", config.levels, "Number of dt-halvings + 1");
  auto* mc = app.add_subcommand("mc-check", "Monte Carlo mmse against quadrature");
  common(mc, true, true, false);
  mc->add_option("--samples", config.samples, "Samples per estimate");
  mc->add_flag("--stratified", config.stratified, "Stratify the noise draws");

  std::vector<const char*> argv{"nglab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (scalar->parsed()) config.command = Command::Scalar;
    if (derivs->parsed()) config.command = Command::Derivatives;
    if (tones->parsed()) config.command = Command::Tones;
    if (kalman->parsed()) config.command = Command::Kalman;
    if (mc->parsed()) config.command = Command::McCheck;
    if (!grid_text.empty()) config.grid = GridSpec::parse(grid_text);
    if (!tones_text.empty()) config.tones = parse_int_list(tones_text);
    if (app.get_subcommand(std::string(to_string(config.command)))->count("--tol") > 0) config.tolerance = tolerance;
    config.format = format_text == "json" ? Format::Json : Format::Csv;
    config.apply_defaults();
    config.validate();

    const Table table = run_command(config);
    std::ostringstream text;
    write_table(table, config.format, text);
    if (config.out.empty()) {
      out << text.str();
    } else {
      std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot open output file '" + config.out + "'");
      file << text.str();
      if (!file.flush()) throw ConfigError("cannot write output file '" + config.out + "'");
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "nglab: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "nglab: numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace nglab::cli

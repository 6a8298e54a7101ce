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

#include <ostream>
#include <span>
#include <string>

#include "nglab/cli/run_config.hpp"
#include "nglab/cli/table.hpp"

namespace nglab::cli {

/// Per q: quadrature mmse, third-order expansion, Gaussian bound,
/// non-Gaussianity and the expansion residuals.
Table cmd_scalar(const RunConfig& config);

/// Orders 1..4 of the non-Gaussianity at q = 0 against the moment formula.
Table cmd_derivatives(const RunConfig& config);

/// Exact, Gaussian and asymptotic tone-model errors over the (N, q) grid.
Table cmd_tones(const RunConfig& config);

/// Riccati errors under dt-halving plus the extrapolated row per (N, q).
Table cmd_kalman(const RunConfig& config);

/// Monte Carlo mmse against quadrature, per source and q.
Table cmd_mc_check(const RunConfig& config);

Table run_command(const RunConfig& config);

/// Parses argv, runs the command and writes the table to --out or `out`.
/// Returns 0 on success, 2 on configuration errors, 3 on numerical failure.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace nglab::cli

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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nglab::cli {

enum class Command { Scalar, Derivatives, Tones, Kalman, McCheck };
enum class Format { Csv, Json };

std::string_view to_string(Command command);

/// "start:stop:count" with an optional ":lin" or ":log" suffix (default lin).
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool logarithmic = false;

  static GridSpec parse(std::string_view text);
  [[nodiscard]] std::vector<double> points() const;
};

/// Comma-separated positive integers, e.g. "4,8,16".
std::vector<int> parse_int_list(std::string_view text);

struct RunConfig {
  Command command = Command::Scalar;
  std::string source;
  std::string amplitude = "unit";
  std::optional<GridSpec> grid;
  std::vector<int> tones;
  /// Quadrature relative tolerance; unset means the command default.
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  std::size_t samples = 1'000'000;
  bool stratified = false;
  int steps = 1024;
  int levels = 4;
  std::string out;
  Format format = Format::Csv;

  /// Fills command-specific defaults for unset fields.
  void apply_defaults();
  /// Throws ConfigError: grids nonempty, tolerances positive, counts in range.
  void validate() const;
};

}  // namespace nglab::cli

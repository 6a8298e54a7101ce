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

#include "nglab/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "nglab/errors.hpp"

namespace nglab::cli {

namespace {

template <class T>
T parse_value(std::string_view text, std::string_view what) {
  T value{};
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ConfigError(std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Scalar:
      return "scalar";
    case Command::Derivatives:
      return "derivatives";
    case Command::Tones:
      return "tones";
    case Command::Kalman:
      return "kalman";
    case Command::McCheck:
      return "mc-check";
  }
  return "unknown";
}

GridSpec GridSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ConfigError("q-grid: expected start:stop:count[:lin|log], got '" + std::string(text) + "'");
  }
  GridSpec g;
  g.start = parse_value<double>(parts[0], "q-grid start");
  g.stop = parse_value<double>(parts[1], "q-grid stop");
  g.count = parse_value<int>(parts[2], "q-grid count");
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.logarithmic = true;
    } else if (parts[3] != "lin") {
      throw ConfigError("q-grid: spacing must be 'lin' or 'log'");
    }
  }
  return g;
}

std::vector<double> GridSpec::points() const {
  if (count <= 0) throw ConfigError("q-grid: the grid is empty");
  if (!std::isfinite(start) || !std::isfinite(stop) || start < 0.0 || stop < 0.0) {
    throw ConfigError("q-grid: endpoints must be finite and nonnegative");
  }
  if (logarithmic && !(start > 0.0 && stop > 0.0)) {
    throw ConfigError("q-grid: log spacing needs positive endpoints");
  }
  std::vector<double> q(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    q[static_cast<std::size_t>(i)] =
        logarithmic ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start))) : start + t * (stop - start);
  }
  // Endpoints exactly as given.
  q.front() = start;
  if (count > 1) q.back() = stop;
  return q;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto part : split(text, ',')) {
    const int n = parse_value<int>(part, "n-list");
    if (n < 1) throw ConfigError("n-list: entries must be >= 1");
    out.push_back(n);
  }
  return out;
}

void RunConfig::apply_defaults() {
  switch (command) {
    case Command::Scalar:
      if (source.empty()) source = "rademacher";
      if (!grid) grid = GridSpec::parse("0.001:1:13:log");
      break;
    case Command::Derivatives:
      if (source.empty()) source = "rademacher";
      break;
    case Command::Tones:
      if (!grid) grid = GridSpec::parse("1:1:1");
      if (tones.empty()) tones = {4, 8, 16, 32, 64};
      break;
    case Command::Kalman:
      if (!grid) grid = GridSpec::parse("2:2:1");
      if (tones.empty()) tones = {1};
      break;
    case Command::McCheck:
      if (source.empty()) source = "all";
      if (!grid) grid = GridSpec::parse("0.5:2:2");
      break;
  }
}

void RunConfig::validate() const {
  if (grid) static_cast<void>(grid->points());
  if (tolerance && !(*tolerance > 0.0 && *tolerance < 1.0)) {
    throw ConfigError("--tol must lie in (0, 1)");
  }
  for (int n : tones) {
    if (n < 1) throw ConfigError("--n-list entries must be >= 1");
  }
  if ((command == Command::Tones || command == Command::Kalman) && tones.empty()) {
    throw ConfigError("--n-list is empty");
  }
  if (command == Command::Kalman) {
    if (steps < 100) throw ConfigError("--steps must be >= 100");
    if (levels < 2 || levels > 12) throw ConfigError("--levels must lie in [2, 12]");
  }
  if (command == Command::McCheck && samples < 10'000) {
    throw ConfigError("--samples must be >= 10000");
  }
}

}  // namespace nglab::cli

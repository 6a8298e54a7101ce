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

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "nglab/cli/run_config.hpp"

namespace nglab::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::logic_error if the row width differs from the header.
  void add(std::vector<Cell> row);
};

/// 17 significant digits ("%.17g"); every finite double round-trips.
std::string format_double(double v);

/// Header row then one line per row; strings holding ',' or '"' are quoted.
void write_csv(const Table& table, std::ostream& os);

/// Array of row objects keyed by column name, in column order.
void write_json(const Table& table, std::ostream& os);

void write_table(const Table& table, Format format, std::ostream& os);

}  // namespace nglab::cli

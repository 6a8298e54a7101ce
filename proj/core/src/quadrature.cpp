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

#include "nglab/quadrature.hpp"

namespace nglab {

void QuadratureConfig::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
    throw ConfigError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw ConfigError("max_subdivisions must be at least 1");
  if (!(tail_width >= 6.0)) throw ConfigError("tail_width must be at least 6");
}

}  // namespace nglab

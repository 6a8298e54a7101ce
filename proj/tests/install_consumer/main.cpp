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
#include <cstdio>

#include <nglab/nglab.hpp>

int main() {
  const nglab::ScalarChannel ch{nglab::sources::gaussian(), nglab::Snr(1.0)};
  const double m = nglab::mmse(ch).value;
  std::printf("mmse = %.12f\n", m);
  return std::abs(m - 0.5) < 1e-9 ? 0 : 1;
}

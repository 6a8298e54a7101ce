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
#include <functional>
#include <vector>

namespace nglab {

/// Worker count from the NGLAB_WORKERS environment variable, defaulting to
/// the hardware concurrency. Always at least 1.
std::size_t worker_count();

/// Runs task(i) for i in [0, count) on up to `workers` threads. Results are
/// stored by index, so the output order never depends on scheduling. The
/// first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  std::size_t workers = worker_count());

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& fn, std::size_t workers = worker_count()) {
  std::vector<T> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = fn(i); }, workers);
  return out;
}

}  // namespace nglab

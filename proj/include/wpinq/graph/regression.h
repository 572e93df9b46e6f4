// Copyright 2026 The wPINQ Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WPINQ_GRAPH_REGRESSION_H_
#define WPINQ_GRAPH_REGRESSION_H_

#include <cstdint>
#include <functional>
#include <vector>

namespace wpinq {

// Noisy degree-sequence measurements v[x] (x-th largest degree) and noisy
// CCDF measurements h[y] (nodes with degree > y), both indexed from 0.
struct RegressionGrid {
  std::function<double(std::int64_t)> v;
  std::function<double(std::int64_t)> h;
  // The path runs from (0, n) to (n, 0).
  std::int64_t n = 0;
};

// Smallest power of two strictly greater than noisy_nodes + 6 / epsilon.
std::int64_t DefaultGridSize(double noisy_nodes, double epsilon);

// Lowest-cost monotone path from (0, n) to (n, 0), where the step
// (x, y) -> (x + 1, y) costs |v[x] - y| and (x, y + 1) -> (x, y) costs
// |h[y] - x|. Returns the height of each horizontal step: a non-increasing,
// nonnegative sequence of length n. Uniform-cost search that creates grid
// vertices only when reached.
std::vector<std::int64_t> FitDegreeSequence(const RegressionGrid& grid);

}  // namespace wpinq

#endif  // WPINQ_GRAPH_REGRESSION_H_

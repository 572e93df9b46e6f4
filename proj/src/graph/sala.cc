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

#include "wpinq/graph/sala.h"

#include <algorithm>

#include "absl/status/status.h"

namespace wpinq {

double SalaNoiseScale(std::int64_t di, std::int64_t dj, double epsilon) {
  return 4.0 * static_cast<double>(std::max(di, dj)) / epsilon;
}

absl::StatusOr<absl::btree_map<DegreePair, double>> SalaJdd(
    const std::vector<Edge>& undirected, double epsilon, NoiseSource& noise,
    std::int64_t max_degree) {
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be positive");
  absl::btree_map<NodeId, std::int64_t> degree = Degrees(undirected);
  if (max_degree == 0) {
    for (const auto& [node, d] : degree) max_degree = std::max(max_degree, d);
  }
  absl::btree_map<DegreePair, double> table;
  for (std::int64_t i = 1; i <= max_degree; ++i) {
    for (std::int64_t j = i; j <= max_degree; ++j) table[{i, j}] = 0.0;
  }
  for (const auto& [a, b] : undirected) {
    std::int64_t da = degree[a];
    std::int64_t db = degree[b];
    auto it = table.find({std::min(da, db), std::max(da, db)});
    if (it != table.end()) it->second += 1.0;
  }
  for (auto& [cell, count] : table) {
    absl::StatusOr<double> z =
        LaplaceSample(SalaNoiseScale(cell.first, cell.second, epsilon), noise);
    if (!z.ok()) return z.status();
    count += *z;
  }
  return table;
}

}  // namespace wpinq

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

#include "wpinq/inference/statistics.h"

#include <algorithm>
#include <cmath>

#include "absl/container/btree_map.h"
#include "absl/container/flat_hash_map.h"

namespace wpinq {

std::int64_t CountTriangles(const std::vector<Edge>& undirected) {
  // Orient each edge from lower to higher (degree, id) rank; every triangle
  // is then found once from its lowest-ranked vertex.
  absl::btree_map<NodeId, std::int64_t> degree = Degrees(undirected);
  auto rank_less = [&](NodeId a, NodeId b) {
    std::int64_t da = degree[a], db = degree[b];
    return da != db ? da < db : a < b;
  };
  absl::flat_hash_map<NodeId, std::vector<NodeId>> out;
  for (const auto& [a, b] : undirected) {
    if (a == b) continue;
    if (rank_less(a, b)) {
      out[a].push_back(b);
    } else {
      out[b].push_back(a);
    }
  }
  for (auto& [v, list] : out) std::sort(list.begin(), list.end());
  std::int64_t count = 0;
  for (const auto& [v, list] : out) {
    for (NodeId u : list) {
      auto it = out.find(u);
      if (it == out.end()) continue;
      const std::vector<NodeId>& other = it->second;
      auto i = list.begin();
      auto j = other.begin();
      while (i != list.end() && j != other.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++count;
          ++i;
          ++j;
        }
      }
    }
  }
  return count;
}

Assortativity DegreeAssortativity(const std::vector<Edge>& undirected) {
  absl::btree_map<NodeId, std::int64_t> degree = Degrees(undirected);
  double n = 0, sum = 0, sum_sq = 0, sum_xy = 0;
  for (const auto& [a, b] : undirected) {
    double da = static_cast<double>(degree[a]);
    double db = static_cast<double>(degree[b]);
    n += 2;
    sum += da + db;
    sum_sq += da * da + db * db;
    sum_xy += 2 * da * db;
  }
  Assortativity result;
  if (n == 0) return result;
  double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  if (var <= 1e-12 * std::max(1.0, mean * mean)) return result;
  result.r = (sum_xy / n - mean * mean) / var;
  result.defined = true;
  return result;
}

}  // namespace wpinq

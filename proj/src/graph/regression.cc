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

#include "wpinq/graph/regression.h"

#include <cassert>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>
#include <vector>

#include "absl/container/flat_hash_map.h"

namespace wpinq {

std::int64_t DefaultGridSize(double noisy_nodes, double epsilon) {
  double target = std::max(0.0, noisy_nodes) + 6.0 / epsilon;
  std::int64_t n = 1;
  while (static_cast<double>(n) <= target) n *= 2;
  return n;
}

std::vector<std::int64_t> FitDegreeSequence(const RegressionGrid& grid) {
  const std::int64_t n = grid.n;
  if (n <= 0) return {};
  std::vector<double> v(n);
  std::vector<double> h(n);
  for (std::int64_t i = 0; i < n; ++i) v[i] = grid.v(i);
  for (std::int64_t i = 0; i < n; ++i) h[i] = grid.h(i);

  const std::uint64_t width = static_cast<std::uint64_t>(n) + 1;
  auto id = [&](std::int64_t x, std::int64_t y) {
    return static_cast<std::uint64_t>(x) * width + static_cast<std::uint64_t>(y);
  };
  struct Visit {
    double dist;
    std::uint64_t parent;
    bool done;
  };
  absl::flat_hash_map<std::uint64_t, Visit> visits;
  using Item = std::tuple<double, std::uint64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

  const std::uint64_t start = id(0, n);
  const std::uint64_t goal = id(n, 0);
  visits[start] = {0.0, start, false};
  queue.emplace(0.0, start);
  auto relax = [&](std::uint64_t from, double dist, std::uint64_t to) {
    auto [it, inserted] = visits.try_emplace(to, Visit{dist, from, false});
    if (!inserted) {
      if (it->second.done || it->second.dist <= dist) return;
      it->second.dist = dist;
      it->second.parent = from;
    }
    queue.emplace(dist, to);
  };
  while (!queue.empty()) {
    auto [dist, node] = queue.top();
    queue.pop();
    Visit& visit = visits[node];
    if (visit.done || dist > visit.dist) continue;
    visit.done = true;
    if (node == goal) break;
    const auto x = static_cast<std::int64_t>(node / width);
    const auto y = static_cast<std::int64_t>(node % width);
    if (x < n) relax(node, dist + std::abs(v[x] - static_cast<double>(y)), id(x + 1, y));
    if (y > 0) relax(node, dist + std::abs(h[y - 1] - static_cast<double>(x)), id(x, y - 1));
  }

  std::vector<std::int64_t> fitted(n, 0);
  for (std::uint64_t node = goal; node != start;) {
    std::uint64_t parent = visits.at(node).parent;
    if (node / width != parent / width) {
      fitted[parent / width] = static_cast<std::int64_t>(parent % width);
    }
    node = parent;
  }
  return fitted;
}

}  // namespace wpinq

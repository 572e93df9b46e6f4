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

#include "wpinq/inference/generators.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "wpinq/inference/edge_set.h"

namespace wpinq {
namespace {

// Prefix sums over node weights with O(log n) update and inverse lookup.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0), size_(n) {}

  void Add(std::size_t i, double w) {
    for (++i; i <= size_; i += i & (~i + 1)) tree_[i] += w;
  }

  // Smallest i whose prefix sum through i exceeds `target`.
  std::size_t Find(double target) const {
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 <= size_) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step <= size_ && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return std::min(pos, size_ - 1);
  }

 private:
  std::vector<double> tree_;
  std::size_t size_;
};

}  // namespace

absl::StatusOr<std::vector<Edge>> BarabasiAlbert(std::int64_t nodes,
                                                 std::int64_t edges,
                                                 double beta,
                                                 std::mt19937_64& rng) {
  if (nodes < 0 || edges < 0) {
    return absl::InvalidArgumentError("node and edge counts must be >= 0");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  const std::int64_t m = std::max<std::int64_t>(
      1, nodes > 0 ? std::llround(static_cast<double>(edges) / nodes) : 1);
  const double attractiveness = m * (1.0 / beta - 2.0);
  const std::int64_t core = std::min(nodes, m + 1);

  std::vector<Edge> out;
  std::vector<std::int64_t> degree(nodes, 0);
  Fenwick weights(std::max<std::int64_t>(nodes, 1));
  for (std::int64_t a = 0; a < core; ++a) {
    for (std::int64_t b = a + 1; b < core; ++b) {
      out.emplace_back(a, b);
      ++degree[a];
      ++degree[b];
    }
  }
  double total = 0.0;
  for (std::int64_t v = 0; v < core; ++v) {
    double w = degree[v] + attractiveness;
    weights.Add(v, w);
    total += w;
  }
  std::vector<std::int64_t> targets;
  for (std::int64_t t = core; t < nodes; ++t) {
    targets.clear();
    while (static_cast<std::int64_t>(targets.size()) < m) {
      auto v = static_cast<std::int64_t>(
          weights.Find(UniformDouble(rng) * total));
      if (v >= t) v = t - 1;
      if (std::find(targets.begin(), targets.end(), v) == targets.end()) {
        targets.push_back(v);
      }
    }
    for (std::int64_t v : targets) {
      out.emplace_back(v, t);
      ++degree[v];
      weights.Add(v, 1.0);
      total += 1.0;
    }
    degree[t] = m;
    weights.Add(t, m + attractiveness);
    total += m + attractiveness;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> PlantedTriangleGraph(std::int64_t nodes,
                                       std::int64_t triangles,
                                       std::int64_t extra_edges,
                                       std::int64_t community,
                                       std::mt19937_64& rng) {
  EdgeSet graph;
  if (nodes < 3) return {};
  community = std::clamp<std::int64_t>(community, 3, nodes);
  const std::int64_t blocks = (nodes + community - 1) / community;
  auto node = [&] { return static_cast<NodeId>(rng() % nodes); };
  for (std::int64_t i = 0; i < triangles; ++i) {
    const std::int64_t base = static_cast<std::int64_t>(rng() % blocks) *
                              community;
    const std::int64_t size = std::min(community, nodes - base);
    if (size < 3) {
      --i;
      continue;
    }
    auto member = [&] {
      return static_cast<NodeId>(base + static_cast<std::int64_t>(
                                            rng() % size));
    };
    NodeId a = member(), b = member(), c = member();
    if (a == b || b == c || a == c) {
      --i;
      continue;
    }
    graph.Add(a, b);
    graph.Add(b, c);
    graph.Add(a, c);
  }
  const auto max_edges = static_cast<std::size_t>(nodes * (nodes - 1) / 2);
  for (std::int64_t i = 0; i < extra_edges && graph.size() < max_edges; ++i) {
    NodeId a = node(), b = node();
    if (a == b || graph.Contains(a, b)) {
      --i;
      continue;
    }
    graph.Add(a, b);
  }
  return graph.Sorted();
}

std::vector<Edge> RewireGraph(const std::vector<Edge>& undirected,
                              int swaps_per_edge, std::mt19937_64& rng) {
  EdgeSet graph(undirected);
  const std::size_t attempts =
      static_cast<std::size_t>(std::max(0, swaps_per_edge)) * graph.size();
  for (std::size_t i = 0; i < attempts; ++i) {
    if (auto swap = ProposeSwap(graph, rng)) ApplySwap(*swap, graph);
  }
  return graph.Sorted();
}

}  // namespace wpinq

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

#include "wpinq/inference/seed_graph.h"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "wpinq/inference/edge_set.h"

namespace wpinq {

bool IsGraphical(std::span<const std::int64_t> d) {
  const std::size_t n = d.size();
  std::vector<std::int64_t> suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) {
    if (d[i] < 0) return false;
    suffix[i] = suffix[i + 1] + d[i];
  }
  if (suffix[0] % 2 != 0) return false;
  std::int64_t lhs = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    lhs += d[k - 1];
    const auto kk = static_cast<std::int64_t>(k);
    // Entries at positions >= k that are at least k form a prefix of the
    // tail; each contributes k, the rest contribute themselves.
    auto first_small = std::partition_point(
        d.begin() + k, d.end(), [kk](std::int64_t x) { return x >= kk; });
    auto p = static_cast<std::size_t>(first_small - d.begin());
    std::int64_t rhs = kk * (kk - 1) +
                       kk * static_cast<std::int64_t>(p - k) + suffix[p];
    if (lhs > rhs) return false;
  }
  return true;
}

int RepairDegreeSequence(std::vector<std::int64_t>& degrees) {
  for (std::int64_t& x : degrees) x = std::max<std::int64_t>(0, x);
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  int rounds = 0;
  while (!IsGraphical(degrees)) {
    std::int64_t total = 0;
    for (std::int64_t x : degrees) total += x;
    --degrees[0];
    if (total % 2 == 0 && degrees.size() > 1 && degrees[1] > 0) --degrees[1];
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    ++rounds;
  }
  while (!degrees.empty() && degrees.back() == 0) degrees.pop_back();
  return rounds;
}

namespace {

bool StubMatch(const std::vector<std::int64_t>& degrees, std::mt19937_64& rng,
               std::vector<Edge>& out) {
  std::vector<NodeId> stubs;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    stubs.insert(stubs.end(), degrees[v], static_cast<NodeId>(v));
  }
  std::shuffle(stubs.begin(), stubs.end(), rng);
  absl::flat_hash_set<Edge> seen;
  out.clear();
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    NodeId a = stubs[i], b = stubs[i + 1];
    if (a == b) return false;
    Edge e = Normalized(a, b);
    if (!seen.insert(e).second) return false;
    out.push_back(e);
  }
  return true;
}

// Deterministic realization: repeatedly connect the node with the largest
// residual degree to the next-largest ones.
std::vector<Edge> HavelHakimi(const std::vector<std::int64_t>& degrees) {
  std::set<std::pair<std::int64_t, NodeId>, std::greater<>> residual;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    if (degrees[v] > 0) residual.emplace(degrees[v], static_cast<NodeId>(v));
  }
  std::vector<Edge> edges;
  while (!residual.empty()) {
    auto [d, v] = *residual.begin();
    residual.erase(residual.begin());
    std::vector<std::pair<std::int64_t, NodeId>> taken;
    for (std::int64_t i = 0; i < d && !residual.empty(); ++i) {
      taken.push_back(*residual.begin());
      residual.erase(residual.begin());
    }
    for (auto [du, u] : taken) {
      edges.push_back(Normalized(v, u));
      if (du > 1) residual.emplace(du - 1, u);
    }
  }
  return edges;
}

}  // namespace

SeedGraph MakeSeedGraph(std::vector<std::int64_t> sequence,
                        std::mt19937_64& rng, int stub_tries) {
  SeedGraph seed;
  seed.repairs = RepairDegreeSequence(sequence);
  seed.degrees = sequence;
  for (int attempt = 0; attempt < stub_tries; ++attempt) {
    if (StubMatch(sequence, rng, seed.edges)) {
      std::sort(seed.edges.begin(), seed.edges.end());
      return seed;
    }
  }
  seed.havel_hakimi = true;
  EdgeSet graph(HavelHakimi(sequence));
  const std::size_t swaps = 10 * graph.size();
  for (std::size_t i = 0; i < swaps; ++i) {
    if (auto swap = ProposeSwap(graph, rng)) ApplySwap(*swap, graph);
  }
  seed.edges = graph.Sorted();
  return seed;
}

}  // namespace wpinq

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

#include "wpinq/inference/edge_set.h"

#include <algorithm>
#include <cassert>
#include <utility>

namespace wpinq {

EdgeSet::EdgeSet(const std::vector<Edge>& edges) {
  edges_.reserve(edges.size());
  index_.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    bool added = Add(a, b);
    assert(added);
    (void)added;
  }
}

bool EdgeSet::Add(NodeId a, NodeId b) {
  if (a == b) return false;
  Edge e = Normalized(a, b);
  auto [it, inserted] = index_.try_emplace(e, edges_.size());
  if (!inserted) return false;
  edges_.push_back(e);
  return true;
}

bool EdgeSet::Remove(NodeId a, NodeId b) {
  auto it = index_.find(Normalized(a, b));
  if (it == index_.end()) return false;
  std::size_t pos = it->second;
  index_.erase(it);
  if (pos + 1 != edges_.size()) {
    edges_[pos] = edges_.back();
    index_[edges_[pos]] = pos;
  }
  edges_.pop_back();
  return true;
}

std::vector<Edge> EdgeSet::Sorted() const {
  std::vector<Edge> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<EdgeSwap> ProposeSwap(const EdgeSet& graph,
                                    std::mt19937_64& rng) {
  const std::size_t m = graph.size();
  if (m < 2) return std::nullopt;
  Edge first = graph.at(rng() % m);
  Edge second = graph.at(rng() % m);
  if (rng() & 1) std::swap(second.first, second.second);
  const auto [a, b] = first;
  const auto [c, d] = second;
  if (a == c || a == d || b == c || b == d) return std::nullopt;
  if (graph.Contains(a, d) || graph.Contains(c, b)) return std::nullopt;
  return EdgeSwap{{first, Normalized(c, d)},
                  {Normalized(a, d), Normalized(c, b)}};
}

void ApplySwap(const EdgeSwap& swap, EdgeSet& graph) {
  for (const auto& [a, b] : swap.removed) graph.Remove(a, b);
  for (const auto& [a, b] : swap.added) graph.Add(a, b);
}

void RevertSwap(const EdgeSwap& swap, EdgeSet& graph) {
  for (const auto& [a, b] : swap.added) graph.Remove(a, b);
  for (const auto& [a, b] : swap.removed) graph.Add(a, b);
}

}  // namespace wpinq

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

#ifndef WPINQ_INFERENCE_EDGE_SET_H_
#define WPINQ_INFERENCE_EDGE_SET_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "wpinq/graph/edges.h"

namespace wpinq {

// Edge (min(a, b), max(a, b)).
inline Edge Normalized(NodeId a, NodeId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// A simple undirected graph with O(1) membership, insertion, removal and
// uniform edge sampling. Edges are stored normalized; iteration order is the
// insertion order perturbed by swap-removals, so it is deterministic.
class EdgeSet {
 public:
  EdgeSet() = default;
  // `edges` must be simple: no loops, no duplicates.
  explicit EdgeSet(const std::vector<Edge>& edges);

  bool Contains(NodeId a, NodeId b) const {
    return index_.contains(Normalized(a, b));
  }
  // Returns false if the edge is a loop or already present.
  bool Add(NodeId a, NodeId b);
  // Returns false if absent.
  bool Remove(NodeId a, NodeId b);

  std::size_t size() const { return edges_.size(); }
  const Edge& at(std::size_t i) const { return edges_[i]; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Sorted copy.
  std::vector<Edge> Sorted() const;

 private:
  std::vector<Edge> edges_;
  absl::flat_hash_map<Edge, std::size_t> index_;
};

// Replacing (a, b), (c, d) by (a, d), (c, b).
struct EdgeSwap {
  std::array<Edge, 2> removed;
  std::array<Edge, 2> added;
};

// Draws two edges uniformly and a random orientation of the second. Returns
// nullopt when the swap would create a loop or a duplicate edge, or would
// not change the graph.
std::optional<EdgeSwap> ProposeSwap(const EdgeSet& graph,
                                    std::mt19937_64& rng);

void ApplySwap(const EdgeSwap& swap, EdgeSet& graph);
void RevertSwap(const EdgeSwap& swap, EdgeSet& graph);

// Uniform on [0, 1) from the top 53 bits of one draw.
inline double UniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace wpinq

#endif  // WPINQ_INFERENCE_EDGE_SET_H_

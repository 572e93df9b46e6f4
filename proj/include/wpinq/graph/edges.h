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

#ifndef WPINQ_GRAPH_EDGES_H_
#define WPINQ_GRAPH_EDGES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/btree_map.h"
#include "absl/status/statusor.h"
#include "wpinq/core/record.h"
#include "wpinq/core/weighted_dataset.h"

namespace wpinq {

using Edge = std::pair<NodeId, NodeId>;

// How a protected undirected edge list is registered as the `edges` input.
enum class EdgePolicy {
  // Each undirected edge is stored once; plans symmetrize it themselves by
  // concatenating the input with its transpose, so each use of the
  // symmetrized collection counts as two uses of the input.
  kRawUndirected,
  // Both orientations are stored in the input.
  kSymmetricDirected,
};

absl::StatusOr<EdgePolicy> ParseEdgePolicy(std::string_view text);
const char* EdgePolicyName(EdgePolicy policy);

// Parses `src dst` lines; `#` starts a comment line, blank lines are
// skipped, node ids are nonnegative integers.
absl::StatusOr<std::vector<Edge>> ParseEdgeList(std::string_view text);
absl::StatusOr<std::vector<Edge>> ReadEdgeList(const std::string& path);
std::string FormatEdgeList(const std::vector<Edge>& edges);

// Undirected simple graph: self-loops dropped, each edge once as (min, max),
// sorted and deduplicated.
std::vector<Edge> SimpleUndirected(const std::vector<Edge>& edges);

// The `edges` input dataset of unit-weight edge records for a simple
// undirected edge list under `policy`.
WeightedDataset EdgeDataset(const std::vector<Edge>& undirected,
                            EdgePolicy policy);

// Degree of every endpoint.
absl::btree_map<NodeId, std::int64_t> Degrees(
    const std::vector<Edge>& undirected);
// Nonzero degrees, non-increasing.
std::vector<std::int64_t> DegreeSequence(const std::vector<Edge>& undirected);
// Sum over nodes of the squared degree.
std::int64_t SumSquaredDegrees(const std::vector<Edge>& undirected);

}  // namespace wpinq

#endif  // WPINQ_GRAPH_EDGES_H_

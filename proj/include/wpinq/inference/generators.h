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

// Benchmark graph generators.

#ifndef WPINQ_INFERENCE_GENERATORS_H_
#define WPINQ_INFERENCE_GENERATORS_H_

#include <cstdint>
#include <random>
#include <vector>

#include "absl/status/statusor.h"
#include "wpinq/graph/edges.h"

namespace wpinq {

// Preferential attachment with initial attractiveness. Starts from a clique
// on m + 1 nodes, m = max(1, round(edges / nodes)); every later node links
// to m distinct earlier nodes chosen with probability proportional to
// degree + A. A = m (1 / beta - 2) makes the expected degree of a node grow
// as t^beta. beta must lie in (0, 1). With nodes <= m + 1 the result is the
// complete graph on `nodes` nodes.
absl::StatusOr<std::vector<Edge>> BarabasiAlbert(std::int64_t nodes,
                                                 std::int64_t edges,
                                                 double beta,
                                                 std::mt19937_64& rng);

// `triangles` random node triples closed into triangles, plus
// `extra_edges` uniformly random edges. Each triple is drawn inside one block
// of `community` consecutive node ids (the last block may be smaller);
// community >= nodes draws triples from the whole graph. Simple, sorted.
std::vector<Edge> PlantedTriangleGraph(std::int64_t nodes,
                                       std::int64_t triangles,
                                       std::int64_t extra_edges,
                                       std::int64_t community,
                                       std::mt19937_64& rng);

// Degree-preserving randomization: swaps_per_edge * |E| swap proposals,
// each applied when it keeps the graph simple. Sorted output.
std::vector<Edge> RewireGraph(const std::vector<Edge>& undirected,
                              int swaps_per_edge, std::mt19937_64& rng);

}  // namespace wpinq

#endif  // WPINQ_INFERENCE_GENERATORS_H_

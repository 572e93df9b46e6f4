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

#ifndef WPINQ_INFERENCE_SEED_GRAPH_H_
#define WPINQ_INFERENCE_SEED_GRAPH_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "wpinq/graph/edges.h"

namespace wpinq {

// Erdos-Gallai test. `degrees` must be non-increasing and nonnegative.
bool IsGraphical(std::span<const std::int64_t> degrees);

// Makes a degree sequence graphical: negative entries become 0, the result
// is sorted non-increasing, then the largest degrees are decremented (one
// if the sum is odd, otherwise the two largest) until the Erdos-Gallai test
// passes. Returns the number of decrement rounds.
int RepairDegreeSequence(std::vector<std::int64_t>& degrees);

struct SeedGraph {
  // Node i carries degree degrees[i].
  std::vector<Edge> edges;
  // The repaired, non-increasing sequence realized by `edges`.
  std::vector<std::int64_t> degrees;
  int repairs = 0;
  // True if stub matching kept colliding and the graph was built by
  // Havel-Hakimi followed by random degree-preserving swaps.
  bool havel_hakimi = false;
};

// A random simple graph realizing `sequence` (after repair). Tries uniform
// stub matching `stub_tries` times, discarding attempts with a loop or a
// repeated edge.
SeedGraph MakeSeedGraph(std::vector<std::int64_t> sequence,
                        std::mt19937_64& rng, int stub_tries = 20);

}  // namespace wpinq

#endif  // WPINQ_INFERENCE_SEED_GRAPH_H_

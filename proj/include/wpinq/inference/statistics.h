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

// Exact (non-private) statistics of synthetic graphs.

#ifndef WPINQ_INFERENCE_STATISTICS_H_
#define WPINQ_INFERENCE_STATISTICS_H_

#include <cstdint>
#include <vector>

#include "wpinq/graph/edges.h"

namespace wpinq {

// Number of triangles in a simple undirected graph.
std::int64_t CountTriangles(const std::vector<Edge>& undirected);

struct Assortativity {
  // Pearson correlation of the degrees at either end of an edge, over both
  // orientations of every edge.
  double r = 0.0;
  // False when every edge end has the same degree (zero variance); r is then
  // reported as 0.
  bool defined = false;
};

Assortativity DegreeAssortativity(const std::vector<Edge>& undirected);

}  // namespace wpinq

#endif  // WPINQ_INFERENCE_STATISTICS_H_

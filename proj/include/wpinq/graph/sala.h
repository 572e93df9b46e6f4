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

#ifndef WPINQ_GRAPH_SALA_H_
#define WPINQ_GRAPH_SALA_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "absl/container/btree_map.h"
#include "absl/status/statusor.h"
#include "wpinq/graph/edges.h"
#include "wpinq/privacy/noise.h"

namespace wpinq {

using DegreePair = std::pair<std::int64_t, std::int64_t>;

// Laplace scale of the baseline JDD cell (d_i, d_j): 4 max(d_i, d_j) / eps.
double SalaNoiseScale(std::int64_t di, std::int64_t dj, double epsilon);

// Baseline joint degree distribution: for every pair d_i <= d_j in
// [1, max_degree]^2 the number of undirected edges whose endpoint degrees are
// {d_i, d_j}, plus Laplace(SalaNoiseScale). Zero-count cells are noised too.
// `max_degree` = 0 uses the graph's largest degree.
absl::StatusOr<absl::btree_map<DegreePair, double>> SalaJdd(
    const std::vector<Edge>& undirected, double epsilon, NoiseSource& noise,
    std::int64_t max_degree = 0);

}  // namespace wpinq

#endif  // WPINQ_GRAPH_SALA_H_

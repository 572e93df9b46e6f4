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

// Graph statistics as query plans over one protected input named "edges"
// holding unit-weight Record::Edge records.
//
// Record shapes:
//   path        Tuple(Node a, Node b, Node c)
//   degree      Tuple(Node a, Int d)
//   JDD         Tuple(Int d_a, Int d_b)
//   TbD         Tuple(Int, Int, Int), non-decreasing
//   SbD         Tuple(Int, Int, Int, Int), non-decreasing
//   CCDF, degree sequence   Int index
//   node count  String "nodes";  TbI  String "triangle!"

#ifndef WPINQ_GRAPH_QUERIES_H_
#define WPINQ_GRAPH_QUERIES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "wpinq/core/record.h"
#include "wpinq/graph/edges.h"
#include "wpinq/incremental/plan.h"

namespace wpinq {

inline constexpr char kEdgesInput[] = "edges";
inline constexpr char kTriangleRecord[] = "triangle!";
inline constexpr char kNodesRecord[] = "nodes";

// Length-two paths (a, b, c) with a != c; aggregation "paths". Over a
// symmetric graph each path weighs 1 / (2 d_b).
QueryPlan PathsPlan(EdgePolicy policy);

// Record i weighs the number of nodes with degree > i; aggregation "ccdf".
QueryPlan DegreeCcdfPlan(EdgePolicy policy);
// Record j weighs the (j+1)-th largest degree; aggregation "degseq".
QueryPlan DegreeSequencePlan(EdgePolicy policy);
// Every node with weight 0.5; aggregation "nodes". Reads the input once
// under either policy.
QueryPlan NodesPlan();
// Single record "nodes" with weight (node count) / 2; aggregation
// "nodecount".
QueryPlan NodeCountPlan();

// Per directed edge (a, b), record (d_a, d_b) gains 1 / (2 + 2 d_a + 2 d_b);
// aggregation "jdd".
QueryPlan JddPlan(EdgePolicy policy);

// Per triangle, the sorted triple of bucketed degrees floor(d / k) gains
// 3 / (d_a^2 + d_b^2 + d_c^2) of the unbucketed degrees; aggregation "tbd".
QueryPlan TbdPlan(EdgePolicy policy, std::int64_t bucket = 1);

// Squares by degree; aggregation "sbd". The node labelled "abcd" holds
// records Tuple(Tuple(a, b, c, d), Int d_b, Int d_c) with weight
// 1 / (2 (d_b^2 (d_c - 1) + d_c^2 (d_b - 1))).
QueryPlan SbdPlan(EdgePolicy policy);

// Single record "triangle!" weighing the sum over triangles of
// min(1/d_a, 1/d_b) + min(1/d_a, 1/d_c) + min(1/d_b, 1/d_c); aggregation
// "tbi".
QueryPlan TbiPlan(EdgePolicy policy);

// Queries the command line can measure.
enum class GraphQuery { kCcdf, kDegseq, kNodeCount, kJdd, kTbd, kSbd, kTbi };

absl::StatusOr<GraphQuery> ParseGraphQuery(std::string_view name);
// Command-line name, also used as the measurement id.
const char* GraphQueryName(GraphQuery query);
QueryPlan PlanFor(GraphQuery query, EdgePolicy policy, std::int64_t bucket);
// Name of the plan's aggregation node.
const char* AggregationName(GraphQuery query);

// Public bounds that fix the record domain released for a measurement.
struct DomainBounds {
  std::int64_t max_degree = 64;
  std::int64_t max_nodes = 1024;
  std::int64_t bucket = 1;
};
// Every record the query could emit for graphs within the bounds, in
// canonical order. Independent of the data, so it can be published.
std::vector<Record> QueryDomain(GraphQuery query, const DomainBounds& bounds);

// Triangle-count estimate for a TbD record of (unbucketed) degrees x, y, z:
// value * (x^2 + y^2 + z^2) / 3.
double UnscaleTbd(const Record& triple, double value);
// Laplace scale of that estimate when the plan was charged `uses` x epsilon
// per input: (uses / epsilon) * (x^2 + y^2 + z^2) / 3.
double UnscaledTbdNoiseScale(const Record& triple, int uses, double epsilon);

// Sum over nodes of C(d, k), in floating point.
double KStarsFromSequence(const std::vector<std::int64_t>& degrees, int k);

// Tuple of Int records in non-decreasing order.
Record SortedDegreeTuple(std::vector<std::int64_t> degrees);

}  // namespace wpinq

#endif  // WPINQ_GRAPH_QUERIES_H_

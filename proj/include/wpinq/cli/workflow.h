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

// The two phases of graph synthesis.
//
// Measurement phase: plans run over the protected edge list and produce
// detached Measurement objects. Synthesis phase: the seed graph realizes a
// degree sequence fitted to the degree measurements, then MCMC moves it
// toward the remaining measurements. Synthesis takes measurements only.

#ifndef WPINQ_CLI_WORKFLOW_H_
#define WPINQ_CLI_WORKFLOW_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "wpinq/graph/edges.h"
#include "wpinq/graph/queries.h"
#include "wpinq/inference/mcmc.h"
#include "wpinq/inference/seed_graph.h"
#include "wpinq/privacy/measurement.h"

namespace wpinq {

// Attribute keys carried by measurements taken with MeasureGraph.
inline constexpr char kPolicyAttribute[] = "policy";
inline constexpr char kBucketAttribute[] = "bucket";

// Independent stream seed for `label` under a base seed, so measurements
// taken with one --seed-noise do not share noise.
std::uint64_t DeriveSeed(std::uint64_t base, std::string_view label);

struct MeasureSpec {
  GraphQuery query = GraphQuery::kTbi;
  EdgePolicy policy = EdgePolicy::kRawUndirected;
  double epsilon = 0.1;
  // Public bounds of the released record domain; bounds.bucket is the TbD
  // bucket width.
  DomainBounds bounds;
  std::uint64_t noise_seed = 0;
  bool zero_noise = false;
};

// Runs the query's plan on `edges` (simple, undirected) and returns the
// measurement detached over the query's public domain.
absl::StatusOr<Measurement> MeasureGraph(const std::vector<Edge>& edges,
                                         const MeasureSpec& spec);

// Fitted degree sequence (non-increasing, zeros included) from degree
// sequence, CCDF and node-count measurements.
absl::StatusOr<std::vector<std::int64_t>> FitDegrees(Measurement& degseq,
                                                     Measurement& ccdf,
                                                     Measurement& nodes);

struct SynthesisConfig {
  ScoreParams score;
  std::int64_t steps = 0;
  std::int64_t trace_interval = 0;
  std::uint64_t graph_seed = 0;
  std::uint64_t walk_seed = 0;
  // Passed to RunMcmc.
  std::function<void(std::int64_t step, const SyntheticState&)> observer =
      nullptr;
};

struct SynthesisResult {
  std::vector<std::int64_t> fitted_degrees;
  SeedGraph seed;
  std::vector<Edge> edges;
  FitTrace trace;
  McmcStats stats;
};

// Requires degseq, ccdf and nodes measurements; every jdd, tbd, sbd or tbi
// measurement becomes an MCMC target.
absl::StatusOr<SynthesisResult> Synthesize(
    const std::vector<std::shared_ptr<Measurement>>& measurements,
    const SynthesisConfig& config);

}  // namespace wpinq

#endif  // WPINQ_CLI_WORKFLOW_H_

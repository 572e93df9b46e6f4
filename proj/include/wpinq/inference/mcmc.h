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

// Metropolis-Hastings search for graphs that fit noisy measurements.
//
// A candidate graph A scores exp(-pow * sum_i eps_i * ||Q_i(A) - m_i||_1).
// Each step proposes a degree-preserving edge swap, pushes the 4-edge delta
// through every target's incremental evaluator and accepts with probability
// min(1, score(next) / score(current)). A rejected swap is rolled back by
// propagating the negated delta. Only measurements are consulted, never the
// protected graph.

#ifndef WPINQ_INFERENCE_MCMC_H_
#define WPINQ_INFERENCE_MCMC_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "wpinq/graph/edges.h"
#include "wpinq/graph/queries.h"
#include "wpinq/incremental/evaluator.h"
#include "wpinq/incremental/plan.h"
#include "wpinq/inference/edge_set.h"
#include "wpinq/privacy/measurement.h"

namespace wpinq {

struct ScoreParams {
  double pow = 10000.0;
};

// min(1, exp(-pow * weighted_change)), where weighted_change is the change
// of sum_i eps_i * ||Q_i(A) - m_i||_1. Evaluated in the log domain.
double AcceptanceProbability(double weighted_change, const ScoreParams& params);

class SyntheticState {
 public:
  struct Target {
    std::string name;
    std::string aggregation;
    std::shared_ptr<Measurement> measurement;
    std::unique_ptr<Evaluator> evaluator;
  };

  // `edges` is a simple undirected graph; it is registered as the `edges`
  // input under `policy`.
  static absl::StatusOr<SyntheticState> Create(const std::vector<Edge>& edges,
                                               EdgePolicy policy);

  SyntheticState(SyntheticState&&) = default;
  SyntheticState& operator=(SyntheticState&&) = default;

  // Fits `m` with the graph query's plan. `m` should have been taken with
  // the same plan and edge policy.
  absl::Status AddTarget(GraphQuery query, std::int64_t bucket,
                         std::shared_ptr<Measurement> m);
  // Fits `m` against aggregation `aggregation` of an arbitrary plan over the
  // `edges` input.
  absl::Status AddTarget(std::string name, QueryPlan plan,
                         std::string_view aggregation,
                         std::shared_ptr<Measurement> m);

  EdgePolicy policy() const { return policy_; }
  const EdgeSet& graph() const { return graph_; }
  const std::vector<Target>& targets() const { return targets_; }

  // sum_i ||Q_i(A) - m_i||_1 from the running trackers.
  double Discrepancy() const;
  // sum_i eps_i * ||Q_i(A) - m_i||_1.
  double WeightedDiscrepancy() const;
  double LogScore(const ScoreParams& params) const {
    return -params.pow * WeightedDiscrepancy();
  }

  // Applies the swap to the graph and every evaluator; returns the change in
  // WeightedDiscrepancy, excluding constant terms of records seen for the
  // first time.
  absl::StatusOr<double> Apply(const EdgeSwap& swap);
  // Undoes a swap applied last.
  absl::Status Revert(const EdgeSwap& swap);

 private:
  SyntheticState(EdgeSet graph, EdgePolicy policy)
      : graph_(std::move(graph)), policy_(policy) {}
  DeltaBatch SwapDelta(const EdgeSwap& swap, bool forward) const;
  absl::Status PropagateAll(const DeltaBatch& delta);

  EdgeSet graph_;
  EdgePolicy policy_;
  std::vector<Target> targets_;
};

struct TracePoint {
  std::int64_t step = 0;
  double discrepancy = 0.0;
  std::int64_t triangles = 0;
  double assortativity = 0.0;
  bool assortativity_defined = false;
};

// Fit statistics sampled during a walk. Append-only, increasing steps.
class FitTrace {
 public:
  void Append(const TracePoint& p);
  const std::vector<TracePoint>& points() const { return points_; }
  // Header `step,discrepancy,triangles,assortativity` then one line per
  // point; reals with 17 significant digits, undefined assortativity as
  // `nan`.
  std::string ToText() const;

 private:
  std::vector<TracePoint> points_;
};

TracePoint SampleTrace(const SyntheticState& state, std::int64_t step);

struct McmcOptions {
  std::int64_t steps = 0;
  // Record a trace point at step 0, every `trace_interval` steps and at the
  // end. 0 disables tracing.
  std::int64_t trace_interval = 0;
  // Called with the state at every trace point, with or without a trace.
  std::function<void(std::int64_t step, const SyntheticState&)> observer =
      nullptr;
};

struct McmcStats {
  std::int64_t steps = 0;
  // Swaps that would break simplicity; counted as rejected steps.
  std::int64_t invalid = 0;
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  double seconds = 0.0;
};

absl::StatusOr<McmcStats> RunMcmc(SyntheticState& state,
                                  const ScoreParams& params,
                                  const McmcOptions& options,
                                  std::mt19937_64& rng,
                                  FitTrace* trace = nullptr);

}  // namespace wpinq

#endif  // WPINQ_INFERENCE_MCMC_H_

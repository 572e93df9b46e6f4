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

#include "wpinq/inference/mcmc.h"

#include <chrono>
#include <cmath>
#include <optional>
#include <utility>

#include "absl/strings/str_cat.h"
#include "wpinq/core/real_format.h"
#include "wpinq/inference/statistics.h"

namespace wpinq {

double AcceptanceProbability(double weighted_change,
                             const ScoreParams& params) {
  double log_ratio = -params.pow * weighted_change;
  return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
}

absl::StatusOr<SyntheticState> SyntheticState::Create(
    const std::vector<Edge>& edges, EdgePolicy policy) {
  EdgeSet graph;
  for (const auto& [a, b] : edges) {
    if (a == b) {
      return absl::InvalidArgumentError(
          absl::StrCat("self-loop at node ", a));
    }
    if (!graph.Add(a, b)) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate edge ", a, " ", b));
    }
  }
  return SyntheticState(std::move(graph), policy);
}

absl::Status SyntheticState::AddTarget(GraphQuery query, std::int64_t bucket,
                                       std::shared_ptr<Measurement> m) {
  return AddTarget(GraphQueryName(query), PlanFor(query, policy_, bucket),
                   AggregationName(query), std::move(m));
}

absl::Status SyntheticState::AddTarget(std::string name, QueryPlan plan,
                                       std::string_view aggregation,
                                       std::shared_ptr<Measurement> m) {
  if (m == nullptr) return absl::InvalidArgumentError("null measurement");
  absl::StatusOr<Evaluator> ev = Evaluator::Create(std::move(plan));
  if (!ev.ok()) return ev.status();
  absl::Status s = ev->Initialize(
      {{kEdgesInput, EdgeDataset(graph_.Sorted(), policy_)}});
  if (!s.ok()) return s;
  s = ev->Attach(aggregation, m);
  if (!s.ok()) return s;
  targets_.push_back(Target{std::move(name), std::string(aggregation),
                            std::move(m),
                            std::make_unique<Evaluator>(*std::move(ev))});
  return absl::OkStatus();
}

double SyntheticState::Discrepancy() const {
  double total = 0.0;
  for (const Target& t : targets_) {
    total += t.evaluator->Discrepancy(t.aggregation);
  }
  return total;
}

double SyntheticState::WeightedDiscrepancy() const {
  double total = 0.0;
  for (const Target& t : targets_) {
    total += t.measurement->epsilon() * t.evaluator->Discrepancy(t.aggregation);
  }
  return total;
}

DeltaBatch SyntheticState::SwapDelta(const EdgeSwap& swap,
                                     bool forward) const {
  std::vector<Edge> removed(swap.removed.begin(), swap.removed.end());
  std::vector<Edge> added(swap.added.begin(), swap.added.end());
  if (!forward) std::swap(removed, added);
  DeltaBatch delta;
  for (const auto& [r, w] : EdgeDataset(removed, policy_)) delta.Add(r, -w);
  for (const auto& [r, w] : EdgeDataset(added, policy_)) delta.Add(r, w);
  delta.Consolidate();
  return delta;
}

absl::Status SyntheticState::PropagateAll(const DeltaBatch& delta) {
  for (Target& t : targets_) {
    absl::Status s = t.evaluator->Propagate(kEdgesInput, delta);
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::StatusOr<double> SyntheticState::Apply(const EdgeSwap& swap) {
  ApplySwap(swap, graph_);
  absl::Status s = PropagateAll(SwapDelta(swap, true));
  if (!s.ok()) return s;
  double change = 0.0;
  for (const Target& t : targets_) {
    change += t.measurement->epsilon() *
              t.evaluator->LastDiscrepancyChange(t.aggregation);
  }
  return change;
}

absl::Status SyntheticState::Revert(const EdgeSwap& swap) {
  RevertSwap(swap, graph_);
  return PropagateAll(SwapDelta(swap, false));
}

void FitTrace::Append(const TracePoint& p) { points_.push_back(p); }

std::string FitTrace::ToText() const {
  std::string out = "step,discrepancy,triangles,assortativity\n";
  for (const TracePoint& p : points_) {
    absl::StrAppend(&out, p.step, ",", FormatReal(p.discrepancy), ",",
                    p.triangles, ",",
                    p.assortativity_defined ? FormatReal(p.assortativity)
                                            : std::string("nan"),
                    "\n");
  }
  return out;
}

TracePoint SampleTrace(const SyntheticState& state, std::int64_t step) {
  std::vector<Edge> edges = state.graph().Sorted();
  Assortativity r = DegreeAssortativity(edges);
  return TracePoint{step, state.Discrepancy(), CountTriangles(edges), r.r,
                    r.defined};
}

absl::StatusOr<McmcStats> RunMcmc(SyntheticState& state,
                                  const ScoreParams& params,
                                  const McmcOptions& options,
                                  std::mt19937_64& rng, FitTrace* trace) {
  if (!(params.pow > 0.0)) {
    return absl::InvalidArgumentError("pow must be positive");
  }
  if (options.steps < 0) {
    return absl::InvalidArgumentError("steps must be nonnegative");
  }
  auto checkpoint = [&](std::int64_t step) {
    if (options.trace_interval <= 0) return;
    if (trace != nullptr) trace->Append(SampleTrace(state, step));
    if (options.observer) options.observer(step, state);
  };
  auto start = std::chrono::steady_clock::now();
  McmcStats stats;
  checkpoint(0);
  for (std::int64_t step = 1; step <= options.steps; ++step) {
    std::optional<EdgeSwap> swap = ProposeSwap(state.graph(), rng);
    if (!swap.has_value()) {
      ++stats.invalid;
      ++stats.rejected;
    } else {
      absl::StatusOr<double> change = state.Apply(*swap);
      if (!change.ok()) return change.status();
      double p = AcceptanceProbability(*change, params);
      if (p >= 1.0 || UniformDouble(rng) < p) {
        ++stats.accepted;
      } else {
        absl::Status s = state.Revert(*swap);
        if (!s.ok()) return s;
        ++stats.rejected;
      }
    }
    stats.steps = step;
    if (options.trace_interval > 0 &&
        (step % options.trace_interval == 0 || step == options.steps)) {
      checkpoint(step);
    }
  }
  stats.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return stats;
}

}  // namespace wpinq

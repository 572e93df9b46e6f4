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

#ifndef WPINQ_INCREMENTAL_EVALUATOR_H_
#define WPINQ_INCREMENTAL_EVALUATOR_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/btree_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "wpinq/core/weighted_dataset.h"
#include "wpinq/incremental/plan.h"
#include "wpinq/privacy/measurement.h"

namespace wpinq {

using NamedDatasets = absl::btree_map<std::string, WeightedDataset>;

// From-scratch evaluation with the batch transforms. Element i is the output
// of node i. This is the reference the incremental evaluator is tested
// against.
absl::StatusOr<std::vector<WeightedDataset>> EvaluateBatch(
    const QueryPlan& plan, const NamedDatasets& inputs);

namespace internal {
class Operator;
}  // namespace internal

// Keeps a plan's operator state current under input deltas.
//
// Propagate() runs nodes in topological order; each node consumes the
// consolidated output deltas of its producers from the same round.
// Aggregation outputs are always materialized; other nodes only when
// `materialize_all` is set.
//
// A measurement attached to an aggregation node is tracked as the running
// discrepancy sum over x of |max(0, Q(A)(x)) - m(x)|, where x ranges over
// records that have a current weight or a memoized value. A record that is
// memoized but has weight zero contributes the constant |m(x)|.
//
// Single-threaded; separate evaluators share nothing mutable except
// measurements, whose lookups are synchronized.
class Evaluator {
 public:
  struct NodeStats {
    int node = 0;
    OpKind kind = OpKind::kInput;
    // Records held in keyed operator indexes.
    std::size_t state_entries = 0;
    // Records in the materialized output (0 when not materialized).
    std::size_t output_records = 0;
    // Records emitted across all propagations.
    std::uint64_t emitted = 0;
  };

  static absl::StatusOr<Evaluator> Create(QueryPlan plan,
                                          bool materialize_all = false);

  Evaluator(Evaluator&&) noexcept;
  Evaluator& operator=(Evaluator&&) noexcept;
  ~Evaluator();

  // Loads every declared input, starting from empty state. Fails if an input
  // is missing or the evaluator was already initialized.
  absl::Status Initialize(const NamedDatasets& inputs);

  // Pushes `delta` into every input node reading `input`.
  absl::Status Propagate(std::string_view input, DeltaBatch delta);

  const QueryPlan& plan() const { return plan_; }
  bool materialized(int node) const;
  // Requires materialized(node).
  const WeightedDataset& Output(int node) const;
  const WeightedDataset& Aggregate(std::string_view name) const;
  // The node's consolidated output delta from the latest propagation.
  const DeltaBatch& LastDelta(int node) const { return last_delta_[node]; }

  // Starts tracking `m` against the named aggregation. Records in the
  // current output are looked up (and so memoized) immediately.
  absl::Status Attach(std::string_view aggregation,
                      std::shared_ptr<Measurement> m);
  const Measurement* measurement(std::string_view aggregation) const;
  // Running discrepancy.
  double Discrepancy(std::string_view aggregation) const;
  // Change in discrepancy caused by weight changes in the latest
  // propagation; constant terms of newly memoized records are excluded.
  double LastDiscrepancyChange(std::string_view aggregation) const;
  // Discrepancy recomputed from the materialized output.
  double RecomputeDiscrepancy(std::string_view aggregation) const;
  // Replaces the running discrepancies by recomputed values.
  void ResyncDiscrepancies();

  std::vector<NodeStats> Stats() const;

 private:
  struct Tracker {
    std::shared_ptr<Measurement> measurement;
    double value = 0.0;
    double last_change = 0.0;
  };

  explicit Evaluator(QueryPlan plan);
  void RunRound(std::string_view input, const DeltaBatch& delta);
  void UpdateTracker(Tracker& tracker, const WeightedDataset& output,
                     const DeltaBatch& delta);
  static double ScratchDiscrepancy(const WeightedDataset& output,
                                   const Measurement& m);
  int AggregationOrDie(std::string_view name) const;

  QueryPlan plan_;
  bool initialized_ = false;
  std::vector<std::unique_ptr<internal::Operator>> ops_;
  std::vector<std::unique_ptr<WeightedDataset>> outputs_;
  std::vector<DeltaBatch> last_delta_;
  std::vector<std::uint64_t> emitted_;
  absl::btree_map<int, Tracker> trackers_;
};

}  // namespace wpinq

#endif  // WPINQ_INCREMENTAL_EVALUATOR_H_

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

// Stable transformations over weighted datasets.
//
// Every transformation T here satisfies ||T(A) - T(A')|| <= ||A - A'|| (or
// the binary analogue), which is what lets a Laplace aggregation of its
// output stay differentially private without scaling the noise. Operators
// that could amplify a single record (SelectMany, GroupBy, Join) rescale
// weights in a data-dependent way instead.
//
// These are the batch (from-scratch) forms. The incremental evaluator has
// its own keyed implementations and is tested against these.

#ifndef WPINQ_TRANSFORMS_TRANSFORMS_H_
#define WPINQ_TRANSFORMS_TRANSFORMS_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wpinq/core/record.h"
#include "wpinq/core/weighted_dataset.h"

namespace wpinq {

// Selector functions must be deterministic: equal inputs give equal outputs.
using RecordMapper = std::function<Record(const Record&)>;
using Predicate = std::function<bool(const Record&)>;
using KeySelector = std::function<Record(const Record&)>;
// Maps a record to a small weighted dataset; duplicates accumulate.
using ManyMapper = std::function<std::vector<WeightedRecord>(const Record&)>;
// Receives one GroupBy prefix, sorted in canonical record order.
using GroupReducer = std::function<Record(std::span<const Record>)>;
using JoinResult = std::function<Record(const Record&, const Record&)>;

// The weights <w0, w1, ...> Shave uses to cut a record into indexed pieces.
class ShaveSchedule {
 public:
  // <w, w, w, ...> for every record; w must be positive.
  static ShaveSchedule Constant(double w);
  // A finite, per-record sequence of nonnegative weights. Weight beyond the
  // end of the sequence is dropped.
  static ShaveSchedule PerRecord(
      std::function<std::vector<double>(const Record&)> fn);

  bool is_constant() const { return !fn_; }
  double constant() const { return constant_; }

  // Calls fn(i, w_i) for each piece <x,i> of positive weight when x carries
  // total weight `weight`.
  void ForEachPiece(const Record& x, double weight,
                    const std::function<void(std::uint64_t, double)>& fn) const;

  // Weight of piece i of a record with the given total weight.
  double PieceWeight(const Record& x, double weight, std::uint64_t i) const;

 private:
  ShaveSchedule() = default;

  double constant_ = 0.0;
  std::function<std::vector<double>(const Record&)> fn_;
};

// Weight of the constant-schedule piece i: max(0, min(w, A - i*w)).
double ConstantPieceWeight(double total, double piece, std::uint64_t i);

WeightedDataset Select(const WeightedDataset& a, const RecordMapper& f);
WeightedDataset Where(const WeightedDataset& a, const Predicate& p);
// sum_x A(x) * f(x) / max(1, ||f(x)||)
WeightedDataset SelectMany(const WeightedDataset& a, const ManyMapper& f);
// Output records are (key, reducer(prefix)) tuples.
WeightedDataset GroupBy(const WeightedDataset& a, const KeySelector& key,
                        const GroupReducer& reducer);
// Output records are <x, i> indexed pairs.
WeightedDataset Shave(const WeightedDataset& a, const ShaveSchedule& schedule);
// sum_k (A_k x B_k^T) / (||A_k|| + ||B_k||), with result() applied to pairs.
WeightedDataset Join(const WeightedDataset& a, const WeightedDataset& b,
                     const KeySelector& key_a, const KeySelector& key_b,
                     const JoinResult& result);
WeightedDataset Union(const WeightedDataset& a, const WeightedDataset& b);
WeightedDataset Intersect(const WeightedDataset& a, const WeightedDataset& b);
WeightedDataset Concat(const WeightedDataset& a, const WeightedDataset& b);
WeightedDataset Except(const WeightedDataset& a, const WeightedDataset& b);

// The output of GroupBy on a single part. `part` holds the records mapped to
// `key` with their weights, in any order. Records are ordered by
// non-increasing weight, ties broken by canonical record order; prefix i
// receives weight (w_i - w_{i+1}) / 2 with w_n = 0. Zero-weight prefixes
// are skipped.
void GroupPartOutputs(const Record& key, std::vector<WeightedRecord> part,
                      const GroupReducer& reducer,
                      const std::function<void(Record, double)>& emit);

// Common reducers.
namespace reducers {
// Number of records in the prefix.
GroupReducer Count();
// Count divided by `bucket` (integer floor).
GroupReducer BucketedCount(std::int64_t bucket);
// The prefix itself as a tuple.
GroupReducer Identity();
}  // namespace reducers

}  // namespace wpinq

#endif  // WPINQ_TRANSFORMS_TRANSFORMS_H_

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

#ifndef WPINQ_CORE_WEIGHTED_DATASET_H_
#define WPINQ_CORE_WEIGHTED_DATASET_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "absl/container/btree_map.h"
#include "absl/status/statusor.h"
#include "wpinq/core/record.h"

namespace wpinq {

// Weights with magnitude at or below this are treated as zero and pruned
// from materialized datasets and consolidated delta batches.
inline constexpr double kWeightEpsilon = 1e-12;

using WeightedRecord = std::pair<Record, double>;

// A map from records to nonzero real weights. Absent records have weight
// zero. Iteration is in canonical record order.
class WeightedDataset {
 public:
  using Map = absl::btree_map<Record, double>;
  using const_iterator = Map::const_iterator;

  WeightedDataset() = default;
  // Duplicate records accumulate.
  WeightedDataset(std::initializer_list<WeightedRecord> entries);

  // Accumulates `weight` onto `record`, removing the entry when the sum
  // falls within kWeightEpsilon of zero. `weight` must be finite.
  void Add(const Record& record, double weight);

  double Weight(const Record& record) const;
  bool Contains(const Record& record) const { return entries_.contains(record); }

  // Sum of absolute weights, ||A||.
  double SizeNorm() const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  friend bool operator==(const WeightedDataset& a, const WeightedDataset& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Map entries_;
};

// A(x), zero for absent records.
inline double WeightOf(const WeightedDataset& dataset, const Record& record) {
  return dataset.Weight(record);
}

// ||A - B|| = sum over x of |A(x) - B(x)|.
double DifferenceNorm(const WeightedDataset& a, const WeightedDataset& b);

// Largest per-record |A(x) - B(x)|; handy for tolerance checks.
double MaxAbsDifference(const WeightedDataset& a, const WeightedDataset& b);

// Signed per-record weight changes.
//
// Add() appends without merging; Consolidate() sorts by record, sums
// duplicates and drops changes within kWeightEpsilon of zero. Readers of
// entries() expect a consolidated batch.
class DeltaBatch {
 public:
  DeltaBatch() = default;
  DeltaBatch(std::initializer_list<WeightedRecord> changes);

  void Add(Record record, double delta) {
    changes_.emplace_back(std::move(record), delta);
    consolidated_ = false;
  }
  void Consolidate();

  DeltaBatch Negated() const;

  std::span<const WeightedRecord> entries() const { return changes_; }
  std::size_t size() const { return changes_.size(); }
  bool empty() const { return changes_.empty(); }
  bool consolidated() const { return consolidated_; }
  void clear() {
    changes_.clear();
    consolidated_ = true;
  }

 private:
  std::vector<WeightedRecord> changes_;
  bool consolidated_ = true;
};

// Pointwise sum of `dataset` and `delta`; fails if any weight becomes
// non-finite.
absl::StatusOr<WeightedDataset> ApplyDelta(const WeightedDataset& dataset,
                                           const DeltaBatch& delta);

// Difference `after - before` as a consolidated batch.
DeltaBatch DiffDatasets(const WeightedDataset& before,
                        const WeightedDataset& after);

}  // namespace wpinq

#endif  // WPINQ_CORE_WEIGHTED_DATASET_H_

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

// Keyed, stateful operator implementations used by the Evaluator. Exposed
// for tests of individual operators.

#ifndef WPINQ_INCREMENTAL_OPERATORS_H_
#define WPINQ_INCREMENTAL_OPERATORS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>

#include "absl/container/btree_map.h"
#include "absl/container/flat_hash_map.h"
#include "wpinq/core/weighted_dataset.h"
#include "wpinq/incremental/plan.h"
#include "wpinq/transforms/transforms.h"

namespace wpinq::internal {

class Operator {
 public:
  virtual ~Operator() = default;
  // `inputs` has one consolidated batch per port (possibly the same batch
  // twice for a self-join). Appends output changes to `out` without
  // consolidating.
  virtual void Apply(std::span<const DeltaBatch* const> inputs,
                     DeltaBatch& out) = 0;
  // Records held in keyed indexes.
  virtual std::size_t StateEntries() const { return 0; }
};

// Maintains Join per key. When a delta leaves ||A_k|| + ||B_k|| unchanged it
// emits (a x B' + A' x b - a x b) / den, which equals
// a x B + A x b + a x b over the pre-delta A, B. Otherwise every retained
// pair of the key is rescaled as well.
class JoinOperator : public Operator {
 public:
  JoinOperator(KeySelector key_a, KeySelector key_b, JoinResult result);

  void Apply(std::span<const DeltaBatch* const> inputs,
             DeltaBatch& out) override;
  std::size_t StateEntries() const override;

  std::uint64_t rescaled_keys() const { return rescaled_keys_; }
  std::uint64_t fast_path_keys() const { return fast_path_keys_; }

 private:
  struct KeyState {
    absl::btree_map<Record, double> left;
    absl::btree_map<Record, double> right;
  };

  KeySelector key_a_;
  KeySelector key_b_;
  JoinResult result_;
  absl::flat_hash_map<Record, KeyState> keys_;
  std::uint64_t rescaled_keys_ = 0;
  std::uint64_t fast_path_keys_ = 0;
};

// Keeps each key's part and its current outputs; a touched key retracts its
// old outputs and emits the recomputed ones.
class GroupByOperator : public Operator {
 public:
  GroupByOperator(KeySelector key, GroupReducer reducer);

  void Apply(std::span<const DeltaBatch* const> inputs,
             DeltaBatch& out) override;
  std::size_t StateEntries() const override;

 private:
  struct Part {
    absl::btree_map<Record, double> records;
    std::vector<WeightedRecord> outputs;
  };

  KeySelector key_;
  GroupReducer reducer_;
  absl::flat_hash_map<Record, Part> parts_;
};

std::unique_ptr<Operator> MakeOperator(const NodeSpec& spec);

}  // namespace wpinq::internal

#endif  // WPINQ_INCREMENTAL_OPERATORS_H_

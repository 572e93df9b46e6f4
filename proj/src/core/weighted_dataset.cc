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

#include "wpinq/core/weighted_dataset.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace wpinq {
namespace {

// Walks the union of both supports in canonical order.
template <typename Fn>
void MergeWalk(const WeightedDataset& a, const WeightedDataset& b, Fn&& fn) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      fn(ia->first, ia->second, 0.0);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      fn(ib->first, 0.0, ib->second);
      ++ib;
    } else {
      fn(ia->first, ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
}

}  // namespace

WeightedDataset::WeightedDataset(std::initializer_list<WeightedRecord> entries) {
  for (const auto& [record, weight] : entries) Add(record, weight);
}

void WeightedDataset::Add(const Record& record, double weight) {
  assert(std::isfinite(weight));
  if (weight == 0.0) return;
  auto [it, inserted] = entries_.try_emplace(record, weight);
  if (!inserted) it->second += weight;
  if (std::abs(it->second) <= kWeightEpsilon) entries_.erase(it);
}

double WeightedDataset::Weight(const Record& record) const {
  auto it = entries_.find(record);
  return it == entries_.end() ? 0.0 : it->second;
}

double WeightedDataset::SizeNorm() const {
  double total = 0.0;
  for (const auto& [record, weight] : entries_) total += std::abs(weight);
  return total;
}

double DifferenceNorm(const WeightedDataset& a, const WeightedDataset& b) {
  double total = 0.0;
  MergeWalk(a, b, [&](const Record&, double wa, double wb) {
    total += std::abs(wa - wb);
  });
  return total;
}

double MaxAbsDifference(const WeightedDataset& a, const WeightedDataset& b) {
  double worst = 0.0;
  MergeWalk(a, b, [&](const Record&, double wa, double wb) {
    worst = std::max(worst, std::abs(wa - wb));
  });
  return worst;
}

DeltaBatch::DeltaBatch(std::initializer_list<WeightedRecord> changes)
    : changes_(changes), consolidated_(false) {
  Consolidate();
}

void DeltaBatch::Consolidate() {
  if (consolidated_) return;
  // Stable sort keeps per-record summation in insertion order, so the
  // result does not depend on the sort implementation.
  std::stable_sort(changes_.begin(), changes_.end(),
                   [](const WeightedRecord& x, const WeightedRecord& y) {
                     return x.first < y.first;
                   });
  std::size_t out = 0;
  for (std::size_t i = 0; i < changes_.size();) {
    std::size_t j = i;
    double sum = 0.0;
    for (; j < changes_.size() && changes_[j].first == changes_[i].first; ++j) {
      sum += changes_[j].second;
    }
    if (std::abs(sum) > kWeightEpsilon) {
      if (out != i) changes_[out].first = std::move(changes_[i].first);
      changes_[out].second = sum;
      ++out;
    }
    i = j;
  }
  changes_.resize(out);
  consolidated_ = true;
}

DeltaBatch DeltaBatch::Negated() const {
  DeltaBatch negated;
  negated.changes_ = changes_;
  for (auto& change : negated.changes_) change.second = -change.second;
  negated.consolidated_ = consolidated_;
  return negated;
}

absl::StatusOr<WeightedDataset> ApplyDelta(const WeightedDataset& dataset,
                                           const DeltaBatch& delta) {
  WeightedDataset out = dataset;
  for (const auto& [record, change] : delta.entries()) {
    double updated = out.Weight(record) + change;
    if (!std::isfinite(change) || !std::isfinite(updated)) {
      return absl::InvalidArgumentError(
          absl::StrCat("delta makes the weight of ", record.ToText(),
                       " non-finite"));
    }
    out.Add(record, change);
  }
  return out;
}

DeltaBatch DiffDatasets(const WeightedDataset& before,
                        const WeightedDataset& after) {
  DeltaBatch diff;
  MergeWalk(before, after, [&](const Record& r, double wb, double wa) {
    if (wa != wb) diff.Add(r, wa - wb);
  });
  diff.Consolidate();
  return diff;
}

}  // namespace wpinq

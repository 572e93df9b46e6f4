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

#include "wpinq/transforms/transforms.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "absl/container/btree_map.h"

namespace wpinq {
namespace {

using Parts = absl::btree_map<Record, std::vector<WeightedRecord>>;

Parts PartitionByKey(const WeightedDataset& a, const KeySelector& key) {
  Parts parts;
  for (const auto& [record, weight] : a) parts[key(record)].emplace_back(record, weight);
  return parts;
}

double PartNorm(const std::vector<WeightedRecord>& part) {
  double norm = 0.0;
  for (const auto& [record, weight] : part) norm += std::abs(weight);
  return norm;
}

template <typename Combine>
WeightedDataset Pointwise(const WeightedDataset& a, const WeightedDataset& b,
                          Combine combine) {
  WeightedDataset out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.Add(ia->first, combine(ia->second, 0.0));
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out.Add(ib->first, combine(0.0, ib->second));
      ++ib;
    } else {
      out.Add(ia->first, combine(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

ShaveSchedule ShaveSchedule::Constant(double w) {
  assert(w > 0.0);
  ShaveSchedule s;
  s.constant_ = w;
  return s;
}

ShaveSchedule ShaveSchedule::PerRecord(
    std::function<std::vector<double>(const Record&)> fn) {
  ShaveSchedule s;
  s.fn_ = std::move(fn);
  return s;
}

double ConstantPieceWeight(double total, double piece, std::uint64_t i) {
  return std::max(0.0, std::min(piece, total - static_cast<double>(i) * piece));
}

void ShaveSchedule::ForEachPiece(
    const Record& x, double weight,
    const std::function<void(std::uint64_t, double)>& fn) const {
  if (is_constant()) {
    for (std::uint64_t i = 0;; ++i) {
      double w = ConstantPieceWeight(weight, constant_, i);
      if (w <= 0.0) break;
      fn(i, w);
    }
    return;
  }
  double consumed = 0.0;
  std::vector<double> terms = fn_(x);
  for (std::uint64_t i = 0; i < terms.size(); ++i) {
    double w = std::max(0.0, std::min(terms[i], weight - consumed));
    if (w > 0.0) fn(i, w);
    consumed += terms[i];
    if (consumed >= weight) break;
  }
}

double ShaveSchedule::PieceWeight(const Record& x, double weight,
                                  std::uint64_t i) const {
  if (is_constant()) return ConstantPieceWeight(weight, constant_, i);
  std::vector<double> terms = fn_(x);
  if (i >= terms.size()) return 0.0;
  double consumed = 0.0;
  for (std::uint64_t j = 0; j < i; ++j) consumed += terms[j];
  return std::max(0.0, std::min(terms[i], weight - consumed));
}

WeightedDataset Select(const WeightedDataset& a, const RecordMapper& f) {
  WeightedDataset out;
  for (const auto& [record, weight] : a) out.Add(f(record), weight);
  return out;
}

WeightedDataset Where(const WeightedDataset& a, const Predicate& p) {
  WeightedDataset out;
  for (const auto& [record, weight] : a) {
    if (p(record)) out.Add(record, weight);
  }
  return out;
}

WeightedDataset SelectMany(const WeightedDataset& a, const ManyMapper& f) {
  WeightedDataset out;
  for (const auto& [record, weight] : a) {
    WeightedDataset produced;
    for (const auto& [r, w] : f(record)) produced.Add(r, w);
    double scale = weight / std::max(1.0, produced.SizeNorm());
    for (const auto& [r, w] : produced) out.Add(r, w * scale);
  }
  return out;
}

void GroupPartOutputs(const Record& key, std::vector<WeightedRecord> part,
                      const GroupReducer& reducer,
                      const std::function<void(Record, double)>& emit) {
  std::sort(part.begin(), part.end(),
            [](const WeightedRecord& x, const WeightedRecord& y) {
              if (x.second != y.second) return x.second > y.second;
              return x.first < y.first;
            });
  std::vector<Record> prefix;
  for (std::size_t i = 0; i < part.size(); ++i) {
    double next = i + 1 < part.size() ? part[i + 1].second : 0.0;
    double w = (part[i].second - next) / 2.0;
    if (w == 0.0) continue;
    prefix.clear();
    for (std::size_t j = 0; j <= i; ++j) prefix.push_back(part[j].first);
    std::sort(prefix.begin(), prefix.end());
    emit(Record::Tuple({key, reducer(prefix)}), w);
  }
}

WeightedDataset GroupBy(const WeightedDataset& a, const KeySelector& key,
                        const GroupReducer& reducer) {
  WeightedDataset out;
  for (auto& [k, part] : PartitionByKey(a, key)) {
    GroupPartOutputs(k, std::move(part), reducer,
                     [&](Record r, double w) { out.Add(r, w); });
  }
  return out;
}

WeightedDataset Shave(const WeightedDataset& a, const ShaveSchedule& schedule) {
  WeightedDataset out;
  for (const auto& [record, weight] : a) {
    schedule.ForEachPiece(record, weight, [&](std::uint64_t i, double w) {
      out.Add(Record::Indexed(record, i), w);
    });
  }
  return out;
}

WeightedDataset Join(const WeightedDataset& a, const WeightedDataset& b,
                     const KeySelector& key_a, const KeySelector& key_b,
                     const JoinResult& result) {
  Parts parts_a = PartitionByKey(a, key_a);
  Parts parts_b = PartitionByKey(b, key_b);
  WeightedDataset out;
  for (const auto& [key, part_a] : parts_a) {
    auto it = parts_b.find(key);
    if (it == parts_b.end()) continue;
    const auto& part_b = it->second;
    double denominator = PartNorm(part_a) + PartNorm(part_b);
    for (const auto& [x, wx] : part_a) {
      for (const auto& [y, wy] : part_b) {
        out.Add(result(x, y), wx * wy / denominator);
      }
    }
  }
  return out;
}

WeightedDataset Union(const WeightedDataset& a, const WeightedDataset& b) {
  return Pointwise(a, b, [](double x, double y) { return std::max(x, y); });
}

WeightedDataset Intersect(const WeightedDataset& a, const WeightedDataset& b) {
  return Pointwise(a, b, [](double x, double y) { return std::min(x, y); });
}

WeightedDataset Concat(const WeightedDataset& a, const WeightedDataset& b) {
  return Pointwise(a, b, [](double x, double y) { return x + y; });
}

WeightedDataset Except(const WeightedDataset& a, const WeightedDataset& b) {
  return Pointwise(a, b, [](double x, double y) { return x - y; });
}

namespace reducers {

GroupReducer Count() {
  return [](std::span<const Record> group) {
    return Record::Int(static_cast<std::int64_t>(group.size()));
  };
}

GroupReducer BucketedCount(std::int64_t bucket) {
  assert(bucket >= 1);
  return [bucket](std::span<const Record> group) {
    return Record::Int(static_cast<std::int64_t>(group.size()) / bucket);
  };
}

GroupReducer Identity() {
  return [](std::span<const Record> group) { return Record::Tuple(group); };
}

}  // namespace reducers
}  // namespace wpinq

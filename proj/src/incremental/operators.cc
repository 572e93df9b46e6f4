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

#include "wpinq/incremental/operators.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

namespace wpinq::internal {
namespace {

using WeightMap = absl::btree_map<Record, double>;

double Norm(const WeightMap& m) {
  double total = 0.0;
  for (const auto& [record, weight] : m) total += std::abs(weight);
  return total;
}

void AddPruned(WeightMap& m, const Record& r, double delta) {
  auto [it, inserted] = m.try_emplace(r, delta);
  if (!inserted) it->second += delta;
  if (std::abs(it->second) <= kWeightEpsilon) m.erase(it);
}

class SelectOperator : public Operator {
 public:
  explicit SelectOperator(RecordMapper f) : f_(std::move(f)) {}
  void Apply(std::span<const DeltaBatch* const> in, DeltaBatch& out) override {
    for (const auto& [r, d] : in[0]->entries()) out.Add(f_(r), d);
  }

 private:
  RecordMapper f_;
};

class WhereOperator : public Operator {
 public:
  explicit WhereOperator(Predicate p) : p_(std::move(p)) {}
  void Apply(std::span<const DeltaBatch* const> in, DeltaBatch& out) override {
    for (const auto& [r, d] : in[0]->entries()) {
      if (p_(r)) out.Add(r, d);
    }
  }

 private:
  Predicate p_;
};

class SelectManyOperator : public Operator {
 public:
  explicit SelectManyOperator(ManyMapper f) : f_(std::move(f)) {}
  void Apply(std::span<const DeltaBatch* const> in, DeltaBatch& out) override {
    for (const auto& [r, d] : in[0]->entries()) {
      WeightedDataset produced;
      for (const auto& [x, w] : f_(r)) produced.Add(x, w);
      double scale = d / std::max(1.0, produced.SizeNorm());
      for (const auto& [x, w] : produced) out.Add(x, w * scale);
    }
  }

 private:
  ManyMapper f_;
};

class ShaveOperator : public Operator {
 public:
  explicit ShaveOperator(ShaveSchedule schedule)
      : schedule_(std::move(schedule)) {}

  void Apply(std::span<const DeltaBatch* const> in, DeltaBatch& out) override {
    for (const auto& [r, d] : in[0]->entries()) {
      double w0 = 0.0;
      auto it = weights_.find(r);
      if (it != weights_.end()) w0 = it->second;
      double w1 = w0 + d;
      if (std::abs(w1) <= kWeightEpsilon) w1 = 0.0;
      if (w1 == 0.0) {
        if (it != weights_.end()) weights_.erase(it);
      } else if (it != weights_.end()) {
        it->second = w1;
      } else {
        weights_.emplace(r, w1);
      }
      Emit(r, w0, w1, out);
    }
  }

  std::size_t StateEntries() const override { return weights_.size(); }

 private:
  void Emit(const Record& r, double w0, double w1, DeltaBatch& out) const {
    if (schedule_.is_constant()) {
      double c = schedule_.constant();
      double lo = std::max(0.0, std::min(w0, w1));
      double hi = std::max(0.0, std::max(w0, w1));
      auto first = static_cast<std::uint64_t>(
          std::max(0.0, std::floor(lo / c) - 1.0));
      auto last = static_cast<std::uint64_t>(std::ceil(hi / c) + 1.0);
      for (std::uint64_t i = first; i <= last; ++i) {
        double change =
            ConstantPieceWeight(w1, c, i) - ConstantPieceWeight(w0, c, i);
        if (change != 0.0) out.Add(Record::Indexed(r, i), change);
      }
      return;
    }
    schedule_.ForEachPiece(r, w0, [&](std::uint64_t i, double w) {
      out.Add(Record::Indexed(r, i), -w);
    });
    schedule_.ForEachPiece(r, w1, [&](std::uint64_t i, double w) {
      out.Add(Record::Indexed(r, i), w);
    });
  }

  ShaveSchedule schedule_;
  absl::flat_hash_map<Record, double> weights_;
};

// Union (max) and Intersect (min).
class PointwiseOperator : public Operator {
 public:
  explicit PointwiseOperator(bool take_max) : take_max_(take_max) {}

  void Apply(std::span<const DeltaBatch* const> in, DeltaBatch& out) override {
    absl::btree_map<Record, std::pair<double, double>> touched;
    for (const auto& [r, d] : in[0]->entries()) touched[r].first += d;
    for (const auto& [r, d] : in[1]->entries()) touched[r].second += d;
    for (const auto& [r, d] : touched) {
      auto& state = weights_[r];
      double before = Combine(state.first, state.second);
      state.first += d.first;
      state.second += d.second;
      if (std::abs(state.first) <= kWeightEpsilon) state.first = 0.0;
      if (std::abs(state.second) <= kWeightEpsilon) state.second = 0.0;
      double after = Combine(state.first, state.second);
      if (state.first == 0.0 && state.second == 0.0) weights_.erase(r);
      if (after != before) out.Add(r, after - before);
    }
  }

  std::size_t StateEntries() const override { return weights_.size(); }

 private:
  double Combine(double a, double b) const {
    return take_max_ ? std::max(a, b) : std::min(a, b);
  }

  bool take_max_;
  absl::flat_hash_map<Record, std::pair<double, double>> weights_;
};

// Concat (sign +1) and Except (sign -1).
class SumOperator : public Operator {
 public:
  explicit SumOperator(double sign) : sign_(sign) {}
  void Apply(std::span<const DeltaBatch* const> in, DeltaBatch& out) override {
    for (const auto& [r, d] : in[0]->entries()) out.Add(r, d);
    for (const auto& [r, d] : in[1]->entries()) out.Add(r, sign_ * d);
  }

 private:
  double sign_;
};

class PassOperator : public Operator {
 public:
  void Apply(std::span<const DeltaBatch* const> in, DeltaBatch& out) override {
    for (const auto& [r, d] : in[0]->entries()) out.Add(r, d);
  }
};

}  // namespace

JoinOperator::JoinOperator(KeySelector key_a, KeySelector key_b,
                           JoinResult result)
    : key_a_(std::move(key_a)),
      key_b_(std::move(key_b)),
      result_(std::move(result)) {}

void JoinOperator::Apply(std::span<const DeltaBatch* const> in,
                         DeltaBatch& out) {
  struct Touch {
    std::vector<WeightedRecord> a;
    std::vector<WeightedRecord> b;
  };
  absl::btree_map<Record, Touch> touched;
  for (const auto& [r, d] : in[0]->entries()) touched[key_a_(r)].a.emplace_back(r, d);
  for (const auto& [r, d] : in[1]->entries()) touched[key_b_(r)].b.emplace_back(r, d);

  for (auto& [key, t] : touched) {
    KeyState& s = keys_[key];
    const double old_left = Norm(s.left);
    const double old_right = Norm(s.right);
    for (const auto& [r, d] : t.a) AddPruned(s.left, r, d);
    for (const auto& [r, d] : t.b) AddPruned(s.right, r, d);
    const double new_left = Norm(s.left);
    const double new_right = Norm(s.right);
    const double old_den = old_left + old_right;
    const double new_den = new_left + new_right;

    auto cross = [&](const auto& xs, const auto& ys, double scale) {
      for (const auto& [x, wx] : xs) {
        for (const auto& [y, wy] : ys) out.Add(result_(x, y), wx * wy * scale);
      }
    };

    if (old_left == 0.0 || old_right == 0.0) {
      // No prior output for this key.
      if (new_left > 0.0 && new_right > 0.0) {
        ++rescaled_keys_;
        cross(s.left, s.right, 1.0 / new_den);
      }
    } else {
      // new - old = A'B'(1/new - 1/old) + (aB' + A'b - ab)/old, where A', B'
      // are the post-delta parts.
      const double inv_old = 1.0 / old_den;
      cross(t.a, s.right, inv_old);
      cross(s.left, t.b, inv_old);
      cross(t.a, t.b, -inv_old);
      if (new_den == old_den) {
        ++fast_path_keys_;
      } else {
        ++rescaled_keys_;
        if (new_den > 0.0) cross(s.left, s.right, 1.0 / new_den - inv_old);
      }
    }
    if (s.left.empty() && s.right.empty()) keys_.erase(key);
  }
}

std::size_t JoinOperator::StateEntries() const {
  std::size_t total = 0;
  for (const auto& [key, s] : keys_) total += s.left.size() + s.right.size();
  return total;
}

GroupByOperator::GroupByOperator(KeySelector key, GroupReducer reducer)
    : key_(std::move(key)), reducer_(std::move(reducer)) {}

void GroupByOperator::Apply(std::span<const DeltaBatch* const> in,
                            DeltaBatch& out) {
  absl::btree_map<Record, std::vector<WeightedRecord>> touched;
  for (const auto& [r, d] : in[0]->entries()) touched[key_(r)].emplace_back(r, d);
  for (auto& [key, changes] : touched) {
    Part& part = parts_[key];
    for (const auto& [r, w] : part.outputs) out.Add(r, -w);
    part.outputs.clear();
    for (const auto& [r, d] : changes) AddPruned(part.records, r, d);
    if (part.records.empty()) {
      parts_.erase(key);
      continue;
    }
    std::vector<WeightedRecord> members(part.records.begin(),
                                        part.records.end());
    GroupPartOutputs(key, std::move(members), reducer_,
                     [&](Record r, double w) {
                       out.Add(r, w);
                       part.outputs.emplace_back(std::move(r), w);
                     });
  }
}

std::size_t GroupByOperator::StateEntries() const {
  std::size_t total = 0;
  for (const auto& [key, p] : parts_) total += p.records.size();
  return total;
}

std::unique_ptr<Operator> MakeOperator(const NodeSpec& spec) {
  switch (spec.kind) {
    case OpKind::kInput:
      return nullptr;
    case OpKind::kSelect:
      return std::make_unique<SelectOperator>(spec.mapper);
    case OpKind::kWhere:
      return std::make_unique<WhereOperator>(spec.predicate);
    case OpKind::kSelectMany:
      return std::make_unique<SelectManyOperator>(spec.many);
    case OpKind::kGroupBy:
      return std::make_unique<GroupByOperator>(spec.key, spec.reducer);
    case OpKind::kShave:
      return std::make_unique<ShaveOperator>(*spec.schedule);
    case OpKind::kJoin:
      return std::make_unique<JoinOperator>(spec.key, spec.key_b, spec.result);
    case OpKind::kUnion:
      return std::make_unique<PointwiseOperator>(true);
    case OpKind::kIntersect:
      return std::make_unique<PointwiseOperator>(false);
    case OpKind::kConcat:
      return std::make_unique<SumOperator>(1.0);
    case OpKind::kExcept:
      return std::make_unique<SumOperator>(-1.0);
    case OpKind::kAggregate:
      return std::make_unique<PassOperator>();
  }
  return nullptr;
}

}  // namespace wpinq::internal

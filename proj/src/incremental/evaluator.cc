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

#include "wpinq/incremental/evaluator.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "wpinq/incremental/operators.h"
#include "wpinq/transforms/transforms.h"

namespace wpinq {

absl::StatusOr<std::vector<WeightedDataset>> EvaluateBatch(
    const QueryPlan& plan, const NamedDatasets& inputs) {
  std::vector<WeightedDataset> out(plan.size());
  for (int id : plan.topological_order()) {
    const NodeSpec& n = plan.node(id);
    auto in = [&](int port) -> const WeightedDataset& {
      return out[n.inputs[port]];
    };
    switch (n.kind) {
      case OpKind::kInput: {
        auto it = inputs.find(n.name);
        if (it == inputs.end()) {
          return absl::NotFoundError(
              absl::StrCat("input '", n.name, "' was not supplied"));
        }
        out[id] = it->second;
        break;
      }
      case OpKind::kSelect: out[id] = Select(in(0), n.mapper); break;
      case OpKind::kWhere: out[id] = Where(in(0), n.predicate); break;
      case OpKind::kSelectMany: out[id] = SelectMany(in(0), n.many); break;
      case OpKind::kGroupBy: out[id] = GroupBy(in(0), n.key, n.reducer); break;
      case OpKind::kShave: out[id] = Shave(in(0), *n.schedule); break;
      case OpKind::kJoin:
        out[id] = Join(in(0), in(1), n.key, n.key_b, n.result);
        break;
      case OpKind::kUnion: out[id] = Union(in(0), in(1)); break;
      case OpKind::kIntersect: out[id] = Intersect(in(0), in(1)); break;
      case OpKind::kConcat: out[id] = Concat(in(0), in(1)); break;
      case OpKind::kExcept: out[id] = Except(in(0), in(1)); break;
      case OpKind::kAggregate: out[id] = in(0); break;
    }
  }
  return out;
}

Evaluator::Evaluator(QueryPlan plan) : plan_(std::move(plan)) {}
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;
Evaluator::~Evaluator() = default;

absl::StatusOr<Evaluator> Evaluator::Create(QueryPlan plan,
                                            bool materialize_all) {
  Evaluator e(std::move(plan));
  const int n = e.plan_.size();
  e.ops_.resize(n);
  e.outputs_.resize(n);
  e.last_delta_.resize(n);
  e.emitted_.assign(n, 0);
  for (int id = 0; id < n; ++id) {
    const NodeSpec& spec = e.plan_.node(id);
    e.ops_[id] = internal::MakeOperator(spec);
    if (materialize_all || spec.kind == OpKind::kAggregate) {
      e.outputs_[id] = std::make_unique<WeightedDataset>();
    }
  }
  return e;
}

absl::Status Evaluator::Initialize(const NamedDatasets& inputs) {
  if (initialized_) {
    return absl::FailedPreconditionError("evaluator already initialized");
  }
  for (const std::string& name : plan_.declared_inputs()) {
    if (!inputs.contains(name)) {
      return absl::NotFoundError(
          absl::StrCat("input '", name, "' was not supplied"));
    }
  }
  initialized_ = true;
  for (const std::string& name : plan_.declared_inputs()) {
    RunRound(name, DiffDatasets(WeightedDataset(), inputs.at(name)));
  }
  return absl::OkStatus();
}

absl::Status Evaluator::Propagate(std::string_view input, DeltaBatch delta) {
  if (!initialized_) {
    return absl::FailedPreconditionError("evaluator is not initialized");
  }
  const auto& declared = plan_.declared_inputs();
  if (std::find(declared.begin(), declared.end(), input) == declared.end()) {
    return absl::NotFoundError(absl::StrCat("unknown input '", std::string(input), "'"));
  }
  delta.Consolidate();
  RunRound(input, delta);
  return absl::OkStatus();
}

void Evaluator::RunRound(std::string_view input, const DeltaBatch& delta) {
  for (DeltaBatch& d : last_delta_) d.clear();
  for (auto& [id, tracker] : trackers_) tracker.last_change = 0.0;

  std::vector<const DeltaBatch*> ports;
  for (int id : plan_.topological_order()) {
    const NodeSpec& spec = plan_.node(id);
    DeltaBatch& out = last_delta_[id];
    if (spec.kind == OpKind::kInput) {
      if (spec.name != input) continue;
      out = delta;
    } else {
      ports.clear();
      bool any = false;
      for (int p : spec.inputs) {
        ports.push_back(&last_delta_[p]);
        any = any || !last_delta_[p].empty();
      }
      if (!any) continue;
      ops_[id]->Apply(ports, out);
      out.Consolidate();
    }
    emitted_[id] += out.size();
    if (out.empty()) continue;
    if (auto it = trackers_.find(id); it != trackers_.end()) {
      UpdateTracker(it->second, *outputs_[id], out);
    }
    if (outputs_[id] != nullptr) {
      for (const auto& [r, d] : out.entries()) outputs_[id]->Add(r, d);
    }
  }
}

void Evaluator::UpdateTracker(Tracker& tracker, const WeightedDataset& output,
                              const DeltaBatch& delta) {
  Measurement& m = *tracker.measurement;
  for (const auto& [r, d] : delta.entries()) {
    double before = output.Weight(r);
    double after = before + d;
    if (std::abs(after) <= kWeightEpsilon) after = 0.0;
    std::optional<double> known = m.Peek(r);
    double value;
    if (known.has_value()) {
      value = *known;
    } else {
      value = m.Lookup(r);
      tracker.value += std::abs(value);
    }
    double change = std::abs(std::max(0.0, after) - value) -
                    std::abs(std::max(0.0, before) - value);
    tracker.value += change;
    tracker.last_change += change;
  }
}

bool Evaluator::materialized(int node) const {
  return outputs_[node] != nullptr;
}

const WeightedDataset& Evaluator::Output(int node) const {
  assert(outputs_[node] != nullptr);
  return *outputs_[node];
}

int Evaluator::AggregationOrDie(std::string_view name) const {
  int id = plan_.FindAggregation(name);
  assert(id >= 0);
  return id;
}

const WeightedDataset& Evaluator::Aggregate(std::string_view name) const {
  return Output(AggregationOrDie(name));
}

absl::Status Evaluator::Attach(std::string_view aggregation,
                               std::shared_ptr<Measurement> m) {
  int id = plan_.FindAggregation(aggregation);
  if (id < 0) {
    return absl::NotFoundError(
        absl::StrCat("no aggregation named '", std::string(aggregation), "'"));
  }
  if (m == nullptr) return absl::InvalidArgumentError("null measurement");
  for (const auto& [r, w] : *outputs_[id]) m->Lookup(r);
  Tracker tracker;
  tracker.value = ScratchDiscrepancy(*outputs_[id], *m);
  tracker.measurement = std::move(m);
  trackers_[id] = std::move(tracker);
  return absl::OkStatus();
}

const Measurement* Evaluator::measurement(std::string_view aggregation) const {
  auto it = trackers_.find(AggregationOrDie(aggregation));
  return it == trackers_.end() ? nullptr : it->second.measurement.get();
}

double Evaluator::Discrepancy(std::string_view aggregation) const {
  return trackers_.at(AggregationOrDie(aggregation)).value;
}

double Evaluator::LastDiscrepancyChange(std::string_view aggregation) const {
  return trackers_.at(AggregationOrDie(aggregation)).last_change;
}

double Evaluator::ScratchDiscrepancy(const WeightedDataset& output,
                                     const Measurement& m) {
  double total = 0.0;
  auto visit = [&](const Measurement::ValueMap& values) {
    for (const auto& [r, value] : values) {
      total += std::abs(std::max(0.0, output.Weight(r)) - value);
    }
  };
  visit(m.observed());
  visit(m.memo());
  return total;
}

double Evaluator::RecomputeDiscrepancy(std::string_view aggregation) const {
  int id = AggregationOrDie(aggregation);
  return ScratchDiscrepancy(*outputs_[id], *trackers_.at(id).measurement);
}

void Evaluator::ResyncDiscrepancies() {
  for (auto& [id, tracker] : trackers_) {
    tracker.value = ScratchDiscrepancy(*outputs_[id], *tracker.measurement);
  }
}

std::vector<Evaluator::NodeStats> Evaluator::Stats() const {
  std::vector<NodeStats> stats;
  for (int id = 0; id < plan_.size(); ++id) {
    NodeStats s;
    s.node = id;
    s.kind = plan_.node(id).kind;
    s.state_entries = ops_[id] ? ops_[id]->StateEntries() : 0;
    s.output_records = outputs_[id] ? outputs_[id]->size() : 0;
    s.emitted = emitted_[id];
    stats.push_back(s);
  }
  return stats;
}

}  // namespace wpinq

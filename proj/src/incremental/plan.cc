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

#include "wpinq/incremental/plan.h"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace wpinq {

const char* OpKindName(OpKind kind) {
  switch (kind) {
    case OpKind::kInput: return "Input";
    case OpKind::kSelect: return "Select";
    case OpKind::kWhere: return "Where";
    case OpKind::kSelectMany: return "SelectMany";
    case OpKind::kGroupBy: return "GroupBy";
    case OpKind::kShave: return "Shave";
    case OpKind::kJoin: return "Join";
    case OpKind::kUnion: return "Union";
    case OpKind::kIntersect: return "Intersect";
    case OpKind::kConcat: return "Concat";
    case OpKind::kExcept: return "Except";
    case OpKind::kAggregate: return "Aggregate";
  }
  return "?";
}

int OpArity(OpKind kind) {
  switch (kind) {
    case OpKind::kInput:
      return 0;
    case OpKind::kJoin:
    case OpKind::kUnion:
    case OpKind::kIntersect:
    case OpKind::kConcat:
    case OpKind::kExcept:
      return 2;
    default:
      return 1;
  }
}

namespace {

absl::Status CheckParameters(int id, const NodeSpec& n) {
  auto missing = [&](std::string_view what) {
    return absl::InvalidArgumentError(absl::StrCat(
        "node ", id, " (", OpKindName(n.kind), ") is missing its ", std::string(what)));
  };
  switch (n.kind) {
    case OpKind::kSelect:
      if (!n.mapper) return missing("mapper");
      break;
    case OpKind::kWhere:
      if (!n.predicate) return missing("predicate");
      break;
    case OpKind::kSelectMany:
      if (!n.many) return missing("mapper");
      break;
    case OpKind::kGroupBy:
      if (!n.key) return missing("key selector");
      if (!n.reducer) return missing("reducer");
      break;
    case OpKind::kShave:
      if (!n.schedule.has_value()) return missing("schedule");
      break;
    case OpKind::kJoin:
      if (!n.key || !n.key_b) return missing("key selectors");
      if (!n.result) return missing("result selector");
      break;
    default:
      break;
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<QueryPlan> QueryPlan::Build(PlanDescription description) {
  auto impl = std::make_shared<Impl>();
  impl->declared_inputs = std::move(description.declared_inputs);
  impl->nodes = std::move(description.nodes);
  const int n = static_cast<int>(impl->nodes.size());
  std::set<std::string, std::less<>> declared(impl->declared_inputs.begin(),
                                              impl->declared_inputs.end());
  std::set<std::string, std::less<>> aggregation_names;
  impl->consumers.assign(n, {});
  std::vector<int> pending(n, 0);

  for (int id = 0; id < n; ++id) {
    const NodeSpec& node = impl->nodes[id];
    if (static_cast<int>(node.inputs.size()) != OpArity(node.kind)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "node ", id, " (", OpKindName(node.kind), ") takes ",
          OpArity(node.kind), " inputs, got ", node.inputs.size()));
    }
    for (int port = 0; port < static_cast<int>(node.inputs.size()); ++port) {
      int producer = node.inputs[port];
      if (producer < 0 || producer >= n) {
        return absl::InvalidArgumentError(absl::StrCat(
            "node ", id, " references missing node ", producer));
      }
      if (impl->nodes[producer].kind == OpKind::kAggregate) {
        return absl::InvalidArgumentError(absl::StrCat(
            "node ", id, " consumes aggregation node ", producer));
      }
      impl->consumers[producer].emplace_back(id, port);
      ++pending[id];
    }
    if (node.kind == OpKind::kInput && !declared.contains(node.name)) {
      return absl::InvalidArgumentError(
          absl::StrCat("node ", id, " reads undeclared input '", node.name, "'"));
    }
    if (node.kind == OpKind::kAggregate &&
        !aggregation_names.insert(node.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate aggregation name '", node.name, "'"));
    }
    if (absl::Status s = CheckParameters(id, node); !s.ok()) return s;
  }
  if (aggregation_names.empty()) {
    return absl::InvalidArgumentError("plan has no aggregation node");
  }

  // Kahn's algorithm, smallest ready id first so the order is reproducible.
  std::set<int> ready;
  for (int id = 0; id < n; ++id) {
    if (pending[id] == 0) ready.insert(id);
  }
  while (!ready.empty()) {
    int id = *ready.begin();
    ready.erase(ready.begin());
    impl->order.push_back(id);
    for (const auto& [consumer, port] : impl->consumers[id]) {
      if (--pending[consumer] == 0) ready.insert(consumer);
    }
  }
  if (static_cast<int>(impl->order.size()) != n) {
    return absl::InvalidArgumentError("plan contains a cycle");
  }
  // With every node's arity satisfied and no cycle, each producer chain ends
  // at an input node, so every aggregation is reachable from an input.
  return QueryPlan(std::move(impl));
}

std::vector<int> QueryPlan::aggregation_nodes() const {
  std::vector<int> out;
  for (int id = 0; id < size(); ++id) {
    if (node(id).kind == OpKind::kAggregate) out.push_back(id);
  }
  return out;
}

int QueryPlan::FindAggregation(std::string_view name) const {
  for (int id = 0; id < size(); ++id) {
    if (node(id).kind == OpKind::kAggregate && node(id).name == name) return id;
  }
  return -1;
}

int QueryPlan::FindNode(std::string_view name) const {
  for (int id = 0; id < size(); ++id) {
    if (node(id).name == name) return id;
  }
  return -1;
}

std::string QueryPlan::Dump() const {
  std::string out;
  for (int id : topological_order()) {
    const NodeSpec& n = node(id);
    absl::StrAppend(&out, id, " ", OpKindName(n.kind));
    if (!n.name.empty()) absl::StrAppend(&out, " '", n.name, "'");
    if (!n.inputs.empty()) {
      absl::StrAppend(&out, " <- ", absl::StrJoin(n.inputs, ","));
    }
    absl::StrAppend(&out, "\n");
  }
  return out;
}

absl::StatusOr<int> CountUses(const QueryPlan& plan, std::string_view input,
                              int aggregation) {
  const auto& declared = plan.declared_inputs();
  if (std::find(declared.begin(), declared.end(), input) == declared.end()) {
    return absl::NotFoundError(absl::StrCat("unknown input '", std::string(input), "'"));
  }
  if (aggregation < 0 || aggregation >= plan.size() ||
      plan.node(aggregation).kind != OpKind::kAggregate) {
    return absl::InvalidArgumentError(
        absl::StrCat("node ", aggregation, " is not an aggregation"));
  }
  // paths[v]: number of producer paths from v back to the input.
  std::vector<long long> paths(plan.size(), 0);
  for (int id : plan.topological_order()) {
    const NodeSpec& n = plan.node(id);
    if (n.kind == OpKind::kInput) {
      paths[id] = n.name == input ? 1 : 0;
    } else {
      for (int p : n.inputs) paths[id] += paths[p];
    }
  }
  return static_cast<int>(paths[aggregation]);
}

absl::StatusOr<int> CountUses(const QueryPlan& plan, std::string_view input) {
  int total = 0;
  for (int id : plan.aggregation_nodes()) {
    absl::StatusOr<int> uses = CountUses(plan, input, id);
    if (!uses.ok()) return uses.status();
    total += *uses;
  }
  return total;
}

PlanBuilder::Stream PlanBuilder::Input(const std::string& name) {
  auto& declared = description_.declared_inputs;
  if (std::find(declared.begin(), declared.end(), name) == declared.end()) {
    declared.push_back(name);
  }
  NodeSpec spec;
  spec.kind = OpKind::kInput;
  spec.name = name;
  return Stream(this, AddNode(std::move(spec)));
}

absl::StatusOr<QueryPlan> PlanBuilder::Build() const {
  return QueryPlan::Build(description_);
}

int PlanBuilder::AddNode(NodeSpec spec) {
  description_.nodes.push_back(std::move(spec));
  return static_cast<int>(description_.nodes.size()) - 1;
}

PlanBuilder::Stream PlanBuilder::Stream::Unary(NodeSpec spec) const {
  spec.inputs = {id_};
  return Stream(builder_, builder_->AddNode(std::move(spec)));
}

PlanBuilder::Stream PlanBuilder::Stream::Binary(NodeSpec spec,
                                                const Stream& other) const {
  spec.inputs = {id_, other.id_};
  return Stream(builder_, builder_->AddNode(std::move(spec)));
}

PlanBuilder::Stream PlanBuilder::Stream::Select(RecordMapper f) const {
  NodeSpec spec;
  spec.kind = OpKind::kSelect;
  spec.mapper = std::move(f);
  return Unary(std::move(spec));
}

PlanBuilder::Stream PlanBuilder::Stream::Where(Predicate p) const {
  NodeSpec spec;
  spec.kind = OpKind::kWhere;
  spec.predicate = std::move(p);
  return Unary(std::move(spec));
}

PlanBuilder::Stream PlanBuilder::Stream::SelectMany(ManyMapper f) const {
  NodeSpec spec;
  spec.kind = OpKind::kSelectMany;
  spec.many = std::move(f);
  return Unary(std::move(spec));
}

PlanBuilder::Stream PlanBuilder::Stream::GroupBy(KeySelector key,
                                                 GroupReducer reducer) const {
  NodeSpec spec;
  spec.kind = OpKind::kGroupBy;
  spec.key = std::move(key);
  spec.reducer = std::move(reducer);
  return Unary(std::move(spec));
}

PlanBuilder::Stream PlanBuilder::Stream::Shave(ShaveSchedule schedule) const {
  NodeSpec spec;
  spec.kind = OpKind::kShave;
  spec.schedule = std::move(schedule);
  return Unary(std::move(spec));
}

PlanBuilder::Stream PlanBuilder::Stream::Join(const Stream& other,
                                              KeySelector key_this,
                                              KeySelector key_other,
                                              JoinResult result) const {
  NodeSpec spec;
  spec.kind = OpKind::kJoin;
  spec.key = std::move(key_this);
  spec.key_b = std::move(key_other);
  spec.result = std::move(result);
  return Binary(std::move(spec), other);
}

PlanBuilder::Stream PlanBuilder::Stream::Union(const Stream& other) const {
  NodeSpec spec;
  spec.kind = OpKind::kUnion;
  return Binary(std::move(spec), other);
}

PlanBuilder::Stream PlanBuilder::Stream::Intersect(const Stream& other) const {
  NodeSpec spec;
  spec.kind = OpKind::kIntersect;
  return Binary(std::move(spec), other);
}

PlanBuilder::Stream PlanBuilder::Stream::Concat(const Stream& other) const {
  NodeSpec spec;
  spec.kind = OpKind::kConcat;
  return Binary(std::move(spec), other);
}

PlanBuilder::Stream PlanBuilder::Stream::Except(const Stream& other) const {
  NodeSpec spec;
  spec.kind = OpKind::kExcept;
  return Binary(std::move(spec), other);
}

PlanBuilder::Stream PlanBuilder::Stream::Label(std::string label) const {
  builder_->description_.nodes[id_].name = std::move(label);
  return *this;
}

void PlanBuilder::Stream::Aggregate(std::string name) const {
  NodeSpec spec;
  spec.kind = OpKind::kAggregate;
  spec.name = std::move(name);
  Unary(std::move(spec));
}

}  // namespace wpinq

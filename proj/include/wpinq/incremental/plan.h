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

#ifndef WPINQ_INCREMENTAL_PLAN_H_
#define WPINQ_INCREMENTAL_PLAN_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "wpinq/transforms/transforms.h"

namespace wpinq {

enum class OpKind {
  kInput,
  kSelect,
  kWhere,
  kSelectMany,
  kGroupBy,
  kShave,
  kJoin,
  kUnion,
  kIntersect,
  kConcat,
  kExcept,
  // NoisyCount endpoint. Holds the measured dataset; epsilon is supplied
  // when the measurement is taken.
  kAggregate,
};

const char* OpKindName(OpKind kind);
// Number of producer edges a node of this kind takes.
int OpArity(OpKind kind);

// One operator application. Only the fields relevant to `kind` are used.
struct NodeSpec {
  OpKind kind = OpKind::kInput;
  // Dataset name for inputs, measurement name for aggregations, free-form
  // label otherwise.
  std::string name;
  // Producer node ids, one per port.
  std::vector<int> inputs;

  RecordMapper mapper;
  Predicate predicate;
  ManyMapper many;
  KeySelector key;
  KeySelector key_b;
  GroupReducer reducer;
  JoinResult result;
  std::optional<ShaveSchedule> schedule;
};

// Raw, unvalidated plan: node ids are indices into `nodes`.
struct PlanDescription {
  std::vector<std::string> declared_inputs;
  std::vector<NodeSpec> nodes;
};

// A validated, immutable, acyclic operator dataflow graph. Copies share
// the underlying node table.
class QueryPlan {
 public:
  // Refuses dangling producer ids, wrong arities, cycles, input nodes that
  // name undeclared datasets, duplicate aggregation names and plans with no
  // aggregation.
  static absl::StatusOr<QueryPlan> Build(PlanDescription description);

  const std::vector<NodeSpec>& nodes() const { return impl_->nodes; }
  const NodeSpec& node(int id) const { return impl_->nodes[id]; }
  int size() const { return static_cast<int>(impl_->nodes.size()); }
  // Producers always precede consumers.
  std::span<const int> topological_order() const { return impl_->order; }
  // (consumer, port) pairs fed by `id`.
  std::span<const std::pair<int, int>> consumers(int id) const {
    return impl_->consumers[id];
  }

  const std::vector<std::string>& declared_inputs() const {
    return impl_->declared_inputs;
  }
  std::vector<int> aggregation_nodes() const;
  // -1 when absent.
  int FindAggregation(std::string_view name) const;
  // First node of any kind with this name; -1 when absent.
  int FindNode(std::string_view name) const;

  // Node list plus producer edges, one node per line.
  std::string Dump() const;

 private:
  struct Impl {
    std::vector<std::string> declared_inputs;
    std::vector<NodeSpec> nodes;
    std::vector<int> order;
    std::vector<std::vector<std::pair<int, int>>> consumers;
  };
  explicit QueryPlan(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

// Number of producer paths from `aggregation` back to input nodes reading
// `input`; a self-join of an input counts twice. Fails for an unknown input
// name or a node id that is not an aggregation.
absl::StatusOr<int> CountUses(const QueryPlan& plan, std::string_view input,
                              int aggregation);
// Sum over every aggregation node of the plan.
absl::StatusOr<int> CountUses(const QueryPlan& plan, std::string_view input);

// Fluent construction of plans.
//
//   PlanBuilder b;
//   auto edges = b.Input("edges");
//   edges.Select(...).Shave(1.0).Aggregate("ccdf");
//   absl::StatusOr<QueryPlan> plan = b.Build();
class PlanBuilder {
 public:
  class Stream {
   public:
    int id() const { return id_; }

    Stream Select(RecordMapper f) const;
    Stream Where(Predicate p) const;
    Stream SelectMany(ManyMapper f) const;
    Stream GroupBy(KeySelector key, GroupReducer reducer) const;
    Stream Shave(ShaveSchedule schedule) const;
    Stream Shave(double piece) const {
      return Shave(ShaveSchedule::Constant(piece));
    }
    Stream Join(const Stream& other, KeySelector key_this,
                KeySelector key_other, JoinResult result) const;
    Stream Union(const Stream& other) const;
    Stream Intersect(const Stream& other) const;
    Stream Concat(const Stream& other) const;
    Stream Except(const Stream& other) const;
    // Terminates the stream in a NoisyCount endpoint.
    void Aggregate(std::string name) const;
    // Names this stream's node so it can be found with FindNode().
    Stream Label(std::string label) const;

   private:
    friend class PlanBuilder;
    Stream(PlanBuilder* builder, int id) : builder_(builder), id_(id) {}
    Stream Unary(NodeSpec spec) const;
    Stream Binary(NodeSpec spec, const Stream& other) const;

    PlanBuilder* builder_;
    int id_;
  };

  // Declares the dataset and returns a stream reading it. Repeated calls
  // with one name create separate input nodes over the same dataset.
  Stream Input(const std::string& name);

  const PlanDescription& description() const { return description_; }
  absl::StatusOr<QueryPlan> Build() const;

 private:
  int AddNode(NodeSpec spec);

  PlanDescription description_;
};

}  // namespace wpinq

#endif  // WPINQ_INCREMENTAL_PLAN_H_

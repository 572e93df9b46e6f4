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

#include "wpinq/graph/queries.h"

#include <algorithm>
#include <cassert>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace wpinq {
namespace {

using Stream = PlanBuilder::Stream;

QueryPlan Finish(const PlanBuilder& builder) {
  absl::StatusOr<QueryPlan> plan = builder.Build();
  assert(plan.ok());
  return *std::move(plan);
}

// The symmetric directed edge collection.
Stream SymmetricEdges(PlanBuilder& b, EdgePolicy policy) {
  Stream edges = b.Input(kEdgesInput);
  if (policy == EdgePolicy::kSymmetricDirected) return edges;
  Stream transpose = edges.Select([](const Record& e) {
    return Record::Edge(e.EdgeTarget(), e.EdgeSource());
  });
  return edges.Concat(transpose);
}

Record Path(NodeId a, NodeId b, NodeId c) {
  return Record::Tuple({Record::Node(a), Record::Node(b), Record::Node(c)});
}

// (a, b, c) -> (b, c, a)
Record RotatePath(const Record& p) {
  return Path(p.NodeAt(1), p.NodeAt(2), p.NodeAt(0));
}

Stream Paths(Stream edges) {
  return edges
      .Join(
          edges, [](const Record& e) { return Record::Node(e.EdgeTarget()); },
          [](const Record& e) { return Record::Node(e.EdgeSource()); },
          [](const Record& x, const Record& y) {
            return Path(x.EdgeSource(), x.EdgeTarget(), y.EdgeTarget());
          })
      .Where([](const Record& p) { return p.NodeAt(0) != p.NodeAt(2); });
}

// Tuple(Node a, Int d_a), weight 0.5 each over a symmetric graph.
Stream Degrees(Stream edges, std::int64_t bucket) {
  return edges.GroupBy(
      [](const Record& e) { return Record::Node(e.EdgeSource()); },
      bucket == 1 ? reducers::Count() : reducers::BucketedCount(bucket));
}

// Tuple(path (a, b, c), Int d_b), weight 1 / (2 d_b^2).
Stream PathsWithMiddleDegree(Stream edges, std::int64_t bucket) {
  return Paths(edges).Join(
      Degrees(edges, bucket),
      [](const Record& p) { return Record::Node(p.NodeAt(1)); },
      [](const Record& d) { return d.Element(0); },
      [](const Record& p, const Record& d) {
        return Record::Tuple({p, d.Element(1)});
      });
}

Record FirstElement(const Record& r) { return r.Element(0); }

}  // namespace

Record SortedDegreeTuple(std::vector<std::int64_t> degrees) {
  std::sort(degrees.begin(), degrees.end());
  std::vector<Record> elements;
  elements.reserve(degrees.size());
  for (std::int64_t d : degrees) elements.push_back(Record::Int(d));
  return Record::Tuple(elements);
}

QueryPlan PathsPlan(EdgePolicy policy) {
  PlanBuilder b;
  Paths(SymmetricEdges(b, policy)).Aggregate("paths");
  return Finish(b);
}

QueryPlan DegreeCcdfPlan(EdgePolicy policy) {
  PlanBuilder b;
  SymmetricEdges(b, policy)
      .Select([](const Record& e) { return Record::Node(e.EdgeSource()); })
      .Shave(1.0)
      .Select([](const Record& r) {
        return Record::Int(static_cast<std::int64_t>(r.Index()));
      })
      .Aggregate("ccdf");
  return Finish(b);
}

QueryPlan DegreeSequencePlan(EdgePolicy policy) {
  auto index = [](const Record& r) {
    return Record::Int(static_cast<std::int64_t>(r.Index()));
  };
  PlanBuilder b;
  SymmetricEdges(b, policy)
      .Select([](const Record& e) { return Record::Node(e.EdgeSource()); })
      .Shave(1.0)
      .Select(index)
      .Shave(1.0)
      .Select(index)
      .Aggregate("degseq");
  return Finish(b);
}

namespace {

Stream Nodes(PlanBuilder& b) {
  return b.Input(kEdgesInput)
      .SelectMany([](const Record& e) {
        return std::vector<WeightedRecord>{{Record::Node(e.EdgeSource()), 1.0},
                                           {Record::Node(e.EdgeTarget()), 1.0}};
      })
      .Shave(0.5)
      .Where([](const Record& r) { return r.Index() == 0; })
      .Select([](const Record& r) { return r.IndexedValue(); });
}

}  // namespace

QueryPlan NodesPlan() {
  PlanBuilder b;
  Nodes(b).Aggregate("nodes");
  return Finish(b);
}

QueryPlan NodeCountPlan() {
  PlanBuilder b;
  Nodes(b)
      .Select([](const Record&) { return Record::String(kNodesRecord); })
      .Aggregate("nodecount");
  return Finish(b);
}

QueryPlan JddPlan(EdgePolicy policy) {
  PlanBuilder b;
  Stream edges = SymmetricEdges(b, policy);
  // Tuple(Edge (a, b), Int d_a), weight 1 / (1 + 2 d_a).
  Stream temp = Degrees(edges, 1).Join(
      edges, FirstElement,
      [](const Record& e) { return Record::Node(e.EdgeSource()); },
      [](const Record& d, const Record& e) {
        return Record::Tuple({e, d.Element(1)});
      });
  temp.Join(
          temp, FirstElement,
          [](const Record& t) {
            Record e = t.Element(0);
            return Record::Edge(e.EdgeTarget(), e.EdgeSource());
          },
          [](const Record& x, const Record& y) {
            return Record::Tuple({x.Element(1), y.Element(1)});
          })
      .Aggregate("jdd");
  return Finish(b);
}

QueryPlan TbdPlan(EdgePolicy policy, std::int64_t bucket) {
  assert(bucket >= 1);
  PlanBuilder b;
  Stream abc = PathsWithMiddleDegree(SymmetricEdges(b, policy), bucket);
  auto rotate = [](const Record& r) {
    return Record::Tuple({RotatePath(r.Element(0)), r.Element(1)});
  };
  Stream bca = abc.Select(rotate);
  Stream cab = bca.Select(rotate);
  abc.Join(bca, FirstElement, FirstElement,
           [](const Record& x, const Record& y) {
             return Record::Tuple({x.Element(0), x.Element(1), y.Element(1)});
           })
      .Join(cab, FirstElement, FirstElement,
            [](const Record& x, const Record& y) {
              return SortedDegreeTuple({x.Element(1).AsInt(),
                                        x.Element(2).AsInt(),
                                        y.Element(1).AsInt()});
            })
      .Aggregate("tbd");
  return Finish(b);
}

QueryPlan SbdPlan(EdgePolicy policy) {
  PlanBuilder b;
  Stream abc = PathsWithMiddleDegree(SymmetricEdges(b, policy), 1);
  Stream abcd =
      abc.Join(
             abc,
             [](const Record& r) {
               Record p = r.Element(0);
               return Record::Tuple({p.Element(1), p.Element(2)});
             },
             [](const Record& r) {
               Record p = r.Element(0);
               return Record::Tuple({p.Element(0), p.Element(1)});
             },
             [](const Record& x, const Record& y) {
               Record px = x.Element(0);
               Record path = Record::Tuple(
                   {px.Element(0), px.Element(1), px.Element(2),
                    y.Element(0).Element(2)});
               return Record::Tuple({path, x.Element(1), y.Element(1)});
             })
          .Where([](const Record& r) {
            Record p = r.Element(0);
            return p.NodeAt(0) != p.NodeAt(3);
          })
          .Label("abcd");
  Stream cdab = abcd.Select([](const Record& r) {
    Record p = r.Element(0);
    Record rotated = Record::Tuple(
        {p.Element(2), p.Element(3), p.Element(0), p.Element(1)});
    return Record::Tuple({rotated, r.Element(1), r.Element(2)});
  });
  abcd.Join(cdab, FirstElement, FirstElement,
            [](const Record& x, const Record& y) {
              return SortedDegreeTuple(
                  {x.Element(1).AsInt(), x.Element(2).AsInt(),
                   y.Element(1).AsInt(), y.Element(2).AsInt()});
            })
      .Aggregate("sbd");
  return Finish(b);
}

QueryPlan TbiPlan(EdgePolicy policy) {
  PlanBuilder b;
  Stream paths = Paths(SymmetricEdges(b, policy));
  paths.Select(RotatePath)
      .Intersect(paths)
      .Select([](const Record&) { return Record::String(kTriangleRecord); })
      .Aggregate("tbi");
  return Finish(b);
}

absl::StatusOr<GraphQuery> ParseGraphQuery(std::string_view name) {
  for (GraphQuery q : {GraphQuery::kCcdf, GraphQuery::kDegseq,
                       GraphQuery::kNodeCount, GraphQuery::kJdd,
                       GraphQuery::kTbd, GraphQuery::kSbd, GraphQuery::kTbi}) {
    if (name == GraphQueryName(q)) return q;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown query '", std::string(name), "'"));
}

const char* GraphQueryName(GraphQuery query) {
  switch (query) {
    case GraphQuery::kCcdf: return "ccdf";
    case GraphQuery::kDegseq: return "degseq";
    case GraphQuery::kNodeCount: return "nodes";
    case GraphQuery::kJdd: return "jdd";
    case GraphQuery::kTbd: return "tbd";
    case GraphQuery::kSbd: return "sbd";
    case GraphQuery::kTbi: return "tbi";
  }
  return "?";
}

const char* AggregationName(GraphQuery query) {
  return query == GraphQuery::kNodeCount ? "nodecount" : GraphQueryName(query);
}

QueryPlan PlanFor(GraphQuery query, EdgePolicy policy, std::int64_t bucket) {
  switch (query) {
    case GraphQuery::kCcdf: return DegreeCcdfPlan(policy);
    case GraphQuery::kDegseq: return DegreeSequencePlan(policy);
    case GraphQuery::kNodeCount: return NodeCountPlan();
    case GraphQuery::kJdd: return JddPlan(policy);
    case GraphQuery::kTbd: return TbdPlan(policy, bucket);
    case GraphQuery::kSbd: return SbdPlan(policy);
    case GraphQuery::kTbi: return TbiPlan(policy);
  }
  return TbiPlan(policy);
}

std::vector<Record> QueryDomain(GraphQuery query, const DomainBounds& bounds) {
  std::vector<Record> out;
  const std::int64_t dmax = bounds.max_degree;
  switch (query) {
    case GraphQuery::kCcdf:
      for (std::int64_t i = 0; i < dmax; ++i) out.push_back(Record::Int(i));
      break;
    case GraphQuery::kDegseq:
      for (std::int64_t j = 0; j < bounds.max_nodes; ++j) {
        out.push_back(Record::Int(j));
      }
      break;
    case GraphQuery::kNodeCount:
      out.push_back(Record::String(kNodesRecord));
      break;
    case GraphQuery::kTbi:
      out.push_back(Record::String(kTriangleRecord));
      break;
    case GraphQuery::kJdd:
      for (std::int64_t a = 1; a <= dmax; ++a) {
        for (std::int64_t b = 1; b <= dmax; ++b) {
          out.push_back(Record::Tuple({Record::Int(a), Record::Int(b)}));
        }
      }
      break;
    case GraphQuery::kTbd: {
      const std::int64_t top = dmax / bounds.bucket;
      for (std::int64_t x = 0; x <= top; ++x) {
        for (std::int64_t y = x; y <= top; ++y) {
          for (std::int64_t z = y; z <= top; ++z) {
            out.push_back(SortedDegreeTuple({x, y, z}));
          }
        }
      }
      break;
    }
    case GraphQuery::kSbd:
      for (std::int64_t v = 2; v <= dmax; ++v) {
        for (std::int64_t x = v; x <= dmax; ++x) {
          for (std::int64_t y = x; y <= dmax; ++y) {
            for (std::int64_t z = y; z <= dmax; ++z) {
              out.push_back(SortedDegreeTuple({v, x, y, z}));
            }
          }
        }
      }
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double UnscaleTbd(const Record& triple, double value) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double d = static_cast<double>(triple.Element(i).AsInt());
    sum += d * d;
  }
  return value * sum / 3.0;
}

double UnscaledTbdNoiseScale(const Record& triple, int uses, double epsilon) {
  return UnscaleTbd(triple, uses / epsilon);
}

double KStarsFromSequence(const std::vector<std::int64_t>& degrees, int k) {
  double total = 0.0;
  for (std::int64_t d : degrees) {
    if (d < k) continue;
    double c = 1.0;
    for (int i = 0; i < k; ++i) c = c * static_cast<double>(d - i) / (i + 1);
    total += c;
  }
  return total;
}

}  // namespace wpinq

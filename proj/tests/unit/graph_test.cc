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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles/graph_oracles.h"
#include "oracles/weight_oracles.h"
#include "wpinq/graph/edges.h"
#include "wpinq/graph/queries.h"
#include "wpinq/graph/regression.h"
#include "wpinq/graph/sala.h"
#include "wpinq/incremental/evaluator.h"

namespace wpinq {
namespace {

using ::testing::ElementsAre;
using oracle::EdgesOf;
using oracle::Ints;
using oracle::RandomGraphs;
using oracle::SbdOracle;
using oracle::TbdOracle;

constexpr double kTol = 1e-9;

WeightedDataset Measure(const QueryPlan& plan, const char* aggregation,
                    const WeightedDataset& edges) {
  std::vector<WeightedDataset> out =
      *EvaluateBatch(plan, {{kEdgesInput, edges}});
  return out[plan.FindAggregation(aggregation)];
}

WeightedDataset Measure(const QueryPlan& plan, const char* aggregation,
                    const std::vector<Edge>& undirected, EdgePolicy policy) {
  return Measure(plan, aggregation, EdgeDataset(undirected, policy));
}

void ExpectNear(const WeightedDataset& actual, const WeightedDataset& expected,
                const std::string& what) {
  EXPECT_LE(MaxAbsDifference(actual, expected), kTol) << what;
}

const EdgePolicy kPolicies[] = {EdgePolicy::kSymmetricDirected,
                                EdgePolicy::kRawUndirected};

TEST(EdgeListTest, ParsesAndFormats) {
  absl::StatusOr<std::vector<Edge>> edges =
      ParseEdgeList("# comment\n1 2\n\n3\t4\n5,6\n");
  ASSERT_TRUE(edges.ok()) << edges.status();
  EXPECT_THAT(*edges, ElementsAre(Edge{1, 2}, Edge{3, 4}, Edge{5, 6}));
  EXPECT_EQ(*ParseEdgeList(FormatEdgeList(*edges)), *edges);
  EXPECT_FALSE(ParseEdgeList("1\n").ok());
  EXPECT_FALSE(ParseEdgeList("1 x\n").ok());
  EXPECT_FALSE(ParseEdgeList("-1 2\n").ok());
}

TEST(EdgeListTest, SimpleUndirectedDropsLoopsAndDuplicates) {
  EXPECT_THAT(SimpleUndirected({{2, 1}, {1, 2}, {3, 3}, {0, 5}}),
              ElementsAre(Edge{0, 5}, Edge{1, 2}));
}

TEST(EdgeListTest, Degrees) {
  std::vector<Edge> k3 = {{0, 1}, {0, 2}, {1, 2}};
  EXPECT_THAT(DegreeSequence(k3), ElementsAre(2, 2, 2));
  EXPECT_EQ(SumSquaredDegrees(k3), 12);
  EXPECT_EQ(SumSquaredDegrees({{0, 1}, {1, 2}}), 6);
  EXPECT_EQ(EdgeDataset(k3, EdgePolicy::kSymmetricDirected).size(), 6u);
  EXPECT_EQ(EdgeDataset(k3, EdgePolicy::kRawUndirected).size(), 3u);
}

TEST(PathsTest, WeightIsInverseTwiceMiddleDegree) {
  for (const oracle::Graph& g : RandomGraphs(50, 30, 0.2, 1)) {
    WeightedDataset expected = oracle::PathsOracle(g);
    for (EdgePolicy policy : kPolicies) {
      ExpectNear(Measure(PathsPlan(policy), "paths", EdgesOf(g), policy),
                 expected, EdgePolicyName(policy));
    }
  }
}

TEST(DegreeCcdfTest, Examples) {
  // Out-edges of a star only: out-degrees center 3, leaves 0.
  WeightedDataset star{{Record::Edge(0, 1), 1.0},
                       {Record::Edge(0, 2), 1.0},
                       {Record::Edge(0, 3), 1.0}};
  ExpectNear(Measure(DegreeCcdfPlan(EdgePolicy::kSymmetricDirected), "ccdf", star),
             {{Record::Int(0), 1.0}, {Record::Int(1), 1.0},
              {Record::Int(2), 1.0}},
             "star");
  EXPECT_TRUE(Measure(DegreeCcdfPlan(EdgePolicy::kSymmetricDirected), "ccdf",
                  WeightedDataset())
                  .empty());
}

TEST(DegreeCcdfTest, MatchesHistogram) {
  for (const oracle::Graph& g : RandomGraphs(50, 50, 0.15, 2)) {
    WeightedDataset expected;
    for (int v = 0; v < g.n; ++v)
      for (std::int64_t i = 0; i < g.degree(v); ++i)
        expected.Add(Record::Int(i), 1.0);
    for (EdgePolicy policy : kPolicies) {
      ExpectNear(Measure(DegreeCcdfPlan(policy), "ccdf", EdgesOf(g), policy),
                 expected, "ccdf");
    }
  }
}

TEST(DegreeSequenceTest, Examples) {
  EdgePolicy p = EdgePolicy::kSymmetricDirected;
  ExpectNear(Measure(DegreeSequencePlan(p), "degseq", {{0, 1}, {0, 2}, {1, 2}}, p),
             {{Record::Int(0), 2.0}, {Record::Int(1), 2.0},
              {Record::Int(2), 2.0}},
             "k3");
  // A single undirected edge has out-degree sequence 1 when loaded one way.
  ExpectNear(Measure(DegreeSequencePlan(p), "degseq",
                 WeightedDataset{{Record::Edge(4, 5), 1.0}}),
             {{Record::Int(0), 1.0}}, "edge");
}

TEST(DegreeSequenceTest, MatchesSortedDegrees) {
  for (const oracle::Graph& g : RandomGraphs(50, 30, 0.2, 3)) {
    std::vector<std::int64_t> degrees;
    for (int v = 0; v < g.n; ++v) degrees.push_back(g.degree(v));
    std::sort(degrees.rbegin(), degrees.rend());
    WeightedDataset expected;
    for (std::size_t j = 0; j < degrees.size(); ++j) {
      if (degrees[j] > 0) expected.Add(Record::Int(j), degrees[j]);
    }
    for (EdgePolicy policy : kPolicies) {
      ExpectNear(Measure(DegreeSequencePlan(policy), "degseq", EdgesOf(g), policy),
                 expected, "degseq");
    }
  }
}

TEST(NodesTest, EachNodeWeighsHalf) {
  WeightedDataset single =
      Measure(NodesPlan(), "nodes", {{3, 8}}, EdgePolicy::kRawUndirected);
  ExpectNear(single, {{Record::Node(3), 0.5}, {Record::Node(8), 0.5}},
             "single");
  EXPECT_TRUE(Measure(NodesPlan(), "nodes", WeightedDataset()).empty());
  for (const oracle::Graph& g : RandomGraphs(20, 30, 0.1, 4)) {
    int nonisolated = 0;
    for (int v = 0; v < g.n; ++v) nonisolated += g.degree(v) > 0;
    for (EdgePolicy policy : kPolicies) {
      WeightedDataset nodes = Measure(NodesPlan(), "nodes", EdgesOf(g), policy);
      EXPECT_NEAR(2 * nodes.SizeNorm(), nonisolated, kTol);
      WeightedDataset count =
          Measure(NodeCountPlan(), "nodecount", EdgesOf(g), policy);
      EXPECT_NEAR(count.Weight(Record::String(kNodesRecord)),
                  nonisolated / 2.0, kTol);
    }
  }
}

TEST(JddTest, Examples) {
  EdgePolicy p = EdgePolicy::kSymmetricDirected;
  ExpectNear(Measure(JddPlan(p), "jdd", {{0, 1}}, p), {{Ints({1, 1}), 1.0 / 3.0}},
             "edge");
  EXPECT_TRUE(Measure(JddPlan(p), "jdd", std::vector<Edge>(), p).empty());
}

TEST(JddTest, MatchesEdgeDegreeTally) {
  for (const oracle::Graph& g : RandomGraphs(50, 30, 0.2, 5)) {
    WeightedDataset expected = oracle::JddOracle(g);
    for (EdgePolicy policy : kPolicies) {
      ExpectNear(Measure(JddPlan(policy), "jdd", EdgesOf(g), policy), expected,
                 "jdd");
    }
  }
}

TEST(TbdTest, Examples) {
  for (EdgePolicy policy : kPolicies) {
    ExpectNear(Measure(TbdPlan(policy), "tbd", {{0, 1}, {0, 2}, {1, 2}}, policy),
               {{Ints({2, 2, 2}), 0.25}}, "k3");
    EXPECT_TRUE(Measure(TbdPlan(policy), "tbd", {{0, 1}, {1, 2}, {2, 3}, {3, 0}},
                    policy)
                    .empty());
  }
}

TEST(TbdTest, MatchesTriangleEnumeration) {
  for (const oracle::Graph& g : RandomGraphs(50, 30, 0.25, 6)) {
    for (EdgePolicy policy : kPolicies) {
      ExpectNear(Measure(TbdPlan(policy), "tbd", EdgesOf(g), policy),
                 TbdOracle(g, 1), "tbd");
    }
  }
}

TEST(TbdTest, BucketedMatchesEnumeration) {
  for (const oracle::Graph& g : RandomGraphs(20, 30, 0.3, 7)) {
    for (std::int64_t k : {2, 3}) {
      EdgePolicy p = EdgePolicy::kSymmetricDirected;
      ExpectNear(Measure(TbdPlan(p, k), "tbd", EdgesOf(g), p), TbdOracle(g, k),
                 "bucket " + std::to_string(k));
    }
  }
}

TEST(TbdTest, UnscaleRecoversTriangleCount) {
  Record t = Ints({2, 2, 2});
  EXPECT_NEAR(UnscaleTbd(t, 0.25), 1.0, kTol);
  EXPECT_EQ(UnscaleTbd(t, 0.0), 0.0);
  for (const oracle::Graph& g : RandomGraphs(20, 30, 0.3, 8)) {
    WeightedDataset tbd = Measure(TbdPlan(EdgePolicy::kSymmetricDirected), "tbd",
                              EdgesOf(g), EdgePolicy::kSymmetricDirected);
    auto counts = oracle::TrianglesByDegree(g);
    ASSERT_EQ(tbd.size(), counts.size());
    for (const auto& [triple, count] : counts) {
      EXPECT_NEAR(UnscaleTbd(Ints(triple), tbd.Weight(Ints(triple))), count,
                  1e-9);
    }
  }
}

TEST(TbdTest, UnscaledNoiseScale) {
  const double eps = 0.1;
  for (auto [x, y, z] : {std::tuple{2, 2, 2}, {1, 5, 9}, {3, 3, 40}}) {
    double s = x * x + y * y + z * z;
    EXPECT_NEAR(UnscaledTbdNoiseScale(Ints({x, y, z}), 18, eps),
                6 * s / eps, 1e-9 * s / eps);
    EXPECT_NEAR((18 / eps) / (3 / s), 6 * s / eps, 1e-9 * s / eps);
  }
}

TEST(TbiTest, Examples) {
  for (EdgePolicy policy : kPolicies) {
    ExpectNear(Measure(TbiPlan(policy), "tbi", {{0, 1}, {0, 2}, {1, 2}}, policy),
               {{Record::String(kTriangleRecord), 1.5}}, "k3");
    EXPECT_TRUE(Measure(TbiPlan(policy), "tbi", {{0, 1}, {1, 2}}, policy).empty());
  }
}

TEST(TbiTest, MatchesEnumeration) {
  for (const oracle::Graph& g : RandomGraphs(50, 30, 0.25, 9)) {
    for (EdgePolicy policy : kPolicies) {
      WeightedDataset out = Measure(TbiPlan(policy), "tbi", EdgesOf(g), policy);
      EXPECT_NEAR(out.Weight(Record::String(kTriangleRecord)),
                  oracle::TbiValue(g), kTol);
    }
  }
}

TEST(SbdTest, FourCycle) {
  std::vector<Edge> c4 = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  EdgePolicy p = EdgePolicy::kSymmetricDirected;
  QueryPlan plan = SbdPlan(p);
  std::vector<WeightedDataset> out =
      *EvaluateBatch(plan, {{kEdgesInput, EdgeDataset(c4, p)}});
  const WeightedDataset& abcd = out[plan.FindNode("abcd")];
  EXPECT_EQ(abcd.size(), 8u);
  for (const auto& [r, w] : abcd) EXPECT_NEAR(w, 1.0 / 16, kTol);
  // All degrees 2 gives 1/32 per discovery, 8 discoveries.
  ExpectNear(out[plan.FindAggregation("sbd")], {{Ints({2, 2, 2, 2}), 0.25}},
             "c4");
  EXPECT_TRUE(Measure(plan, "sbd", {{0, 1}, {1, 2}, {0, 2}}, p).empty());
}

TEST(SbdTest, AbcdWeightsFollowClosedForm) {
  for (const oracle::Graph& g : RandomGraphs(30, 20, 0.3, 10)) {
    EdgePolicy p = EdgePolicy::kSymmetricDirected;
    QueryPlan plan = SbdPlan(p);
    std::vector<WeightedDataset> out =
        *EvaluateBatch(plan, {{kEdgesInput, EdgeDataset(EdgesOf(g), p)}});
    for (const auto& [r, w] : out[plan.FindNode("abcd")]) {
      double db = r.Element(1).AsInt(), dc = r.Element(2).AsInt();
      ASSERT_NEAR(w, oracle::AbcdWeight(db, dc), kTol);
      Record path = r.Element(0);
      EXPECT_EQ(db, g.degree(path.NodeAt(1)));
      EXPECT_EQ(dc, g.degree(path.NodeAt(2)));
    }
  }
}

TEST(SbdTest, MatchesSquareEnumeration) {
  for (const oracle::Graph& g : RandomGraphs(30, 20, 0.3, 11)) {
    for (EdgePolicy policy : kPolicies) {
      WeightedDataset out = Measure(SbdPlan(policy), "sbd", EdgesOf(g), policy);
      ExpectNear(out, SbdOracle(g), "sbd");
    }
  }
}

TEST(QueryDomainTest, CoversEveryPossibleRecord) {
  DomainBounds bounds{.max_degree = 12, .max_nodes = 30, .bucket = 2};
  for (GraphQuery q : {GraphQuery::kCcdf, GraphQuery::kDegseq,
                       GraphQuery::kNodeCount, GraphQuery::kJdd,
                       GraphQuery::kTbd, GraphQuery::kSbd, GraphQuery::kTbi}) {
    std::vector<Record> domain = QueryDomain(q, bounds);
    ASSERT_TRUE(std::is_sorted(domain.begin(), domain.end()));
    for (const oracle::Graph& g : RandomGraphs(10, 20, 0.3, 12)) {
      WeightedDataset out =
          Measure(PlanFor(q, EdgePolicy::kSymmetricDirected, bounds.bucket),
              AggregationName(q), EdgesOf(g), EdgePolicy::kSymmetricDirected);
      for (const auto& [r, w] : out) {
        EXPECT_TRUE(std::binary_search(domain.begin(), domain.end(), r))
            << GraphQueryName(q) << " " << r.ToText();
      }
    }
  }
}

TEST(KStarsTest, Examples) {
  EXPECT_EQ(KStarsFromSequence({3}, 2), 3.0);
  EXPECT_EQ(KStarsFromSequence({2, 2, 2}, 2), 3.0);
  EXPECT_EQ(KStarsFromSequence({2, 2, 2}, 3), 0.0);
  for (const oracle::Graph& g : RandomGraphs(10, 15, 0.4, 13)) {
    // Brute force: unordered pairs of distinct neighbours of each center.
    int brute = 0;
    for (int v = 0; v < g.n; ++v)
      for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b) brute += g.adj[v][a] && g.adj[v][b];
    EXPECT_EQ(KStarsFromSequence(DegreeSequence(EdgesOf(g)), 2), brute);
  }
}

RegressionGrid ExactGrid(const std::vector<std::int64_t>& seq, std::int64_t n) {
  auto v = [seq](std::int64_t x) {
    return x < static_cast<std::int64_t>(seq.size())
               ? static_cast<double>(seq[x])
               : 0.0;
  };
  auto h = [seq](std::int64_t y) {
    return static_cast<double>(
        std::count_if(seq.begin(), seq.end(), [y](auto d) { return d > y; }));
  };
  return RegressionGrid{v, h, n};
}

TEST(RegressionTest, NoiselessInputsRecoverSequence) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    oracle::Graph g = oracle::RandomGraph(5 + trial, 0.3, rng());
    std::vector<std::int64_t> seq = DegreeSequence(EdgesOf(g));
    std::int64_t n = DefaultGridSize(g.n, 1.0);
    std::vector<std::int64_t> fit = FitDegreeSequence(ExactGrid(seq, n));
    seq.resize(n, 0);
    EXPECT_EQ(fit, seq);
  }
}

TEST(RegressionTest, AllZeroGivesAllZero) {
  RegressionGrid grid{[](std::int64_t) { return 0.0; },
                      [](std::int64_t) { return 0.0; }, 16};
  EXPECT_EQ(FitDegreeSequence(grid), std::vector<std::int64_t>(16, 0));
}

TEST(RegressionTest, FitIsMonotoneUnderNoise) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> noise(-3, 3);
  std::vector<std::int64_t> seq = {9, 7, 7, 4, 3, 3, 1, 1};
  RegressionGrid exact = ExactGrid(seq, 16);
  RegressionGrid noisy{[&](std::int64_t x) { return exact.v(x) + noise(rng); },
                       [&](std::int64_t y) { return exact.h(y) + noise(rng); },
                       16};
  std::vector<std::int64_t> fit = FitDegreeSequence(noisy);
  ASSERT_EQ(fit.size(), 16u);
  EXPECT_TRUE(std::is_sorted(fit.rbegin(), fit.rend()));
  EXPECT_GE(fit.back(), 0);
}

TEST(RegressionTest, DefaultGridSize) {
  EXPECT_EQ(DefaultGridSize(100, 0.1), 256);
  EXPECT_EQ(DefaultGridSize(2, 1.0), 16);
  EXPECT_EQ(DefaultGridSize(-5, 1.0), 8);
}

TEST(SalaTest, ZeroNoiseOnTriangle) {
  NoiseSource zero = NoiseSource::ZeroNoise();
  auto table = SalaJdd({{0, 1}, {0, 2}, {1, 2}}, 1.0, zero);
  ASSERT_TRUE(table.ok());
  ASSERT_EQ(table->size(), 3u);  // (1,1), (1,2), (2,2)
  EXPECT_EQ(table->at({2, 2}), 3.0);
  EXPECT_EQ(table->at({1, 1}), 0.0);
  EXPECT_EQ(table->at({1, 2}), 0.0);
}

TEST(SalaTest, EmptyGraphIsAllZero) {
  NoiseSource zero = NoiseSource::ZeroNoise();
  auto table = SalaJdd({}, 1.0, zero, 4);
  ASSERT_TRUE(table.ok());
  EXPECT_EQ(table->size(), 10u);
  for (const auto& [cell, v] : *table) EXPECT_EQ(v, 0.0);
}

TEST(SalaTest, NoiseScale) {
  EXPECT_EQ(SalaNoiseScale(3, 3, 0.5), 24.0);
  EXPECT_EQ(SalaNoiseScale(2, 7, 1.0), 28.0);
}

TEST(SalaTest, SeededNoiseHasExpectedSpread) {
  NoiseSource src = NoiseSource::Seeded(16);
  double sum_abs = 0;
  int n = 0;
  for (int rep = 0; rep < 200; ++rep) {
    auto table = SalaJdd({}, 2.0, src, 3);
    for (const auto& [cell, v] : *table) {
      sum_abs += std::abs(v) / SalaNoiseScale(cell.first, cell.second, 2.0);
      ++n;
    }
  }
  // Mean |Laplace(b)| / b is 1.
  EXPECT_NEAR(sum_abs / n, 1.0, 0.05);
}

}  // namespace
}  // namespace wpinq

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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Arguments select a subset of criteria by
// number; with none, all run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "oracles/graph_oracles.h"
#include "oracles/stability_suite.h"
#include "oracles/weight_oracles.h"
#include "wpinq/cli/commands.h"
#include "wpinq/cli/workflow.h"
#include "wpinq/core/weighted_dataset.h"
#include "wpinq/graph/edges.h"
#include "wpinq/graph/queries.h"
#include "wpinq/incremental/evaluator.h"
#include "wpinq/inference/edge_set.h"
#include "wpinq/inference/generators.h"
#include "wpinq/inference/mcmc.h"
#include "wpinq/inference/statistics.h"
#include "wpinq/privacy/budget.h"
#include "wpinq/privacy/measurement.h"
#include "wpinq/privacy/noise.h"
#include "wpinq/transforms/transforms.h"

namespace wpinq {
namespace {

namespace fs = std::filesystem;
using oracle::EdgesOf;
using oracle::Ints;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  const char* name;
  double time_limit_seconds;  // 0: no limit.
  std::function<Outcome()> run;
};

// Collects failed checks; the criterion passes when there are none.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void ExpectNear(const WeightedDataset& actual,
                  const WeightedDataset& expected, double tol,
                  const std::string& what) {
    double diff = MaxAbsDifference(actual, expected);
    worst_ = std::max(worst_, diff);
    Expect(diff <= tol, absl::StrCat(what, " off by ", diff));
  }
  Outcome Done(const std::string& summary = "") const {
    std::string detail = absl::StrCat(checks_ - failed_, "/", checks_,
                                      " checks");
    if (worst_ > 0) absl::StrAppend(&detail, ", max error ", worst_);
    if (!summary.empty()) absl::StrAppend(&detail, "; ", summary);
    if (failed_ > 0) {
      absl::StrAppend(&detail, "; failed: ", absl::StrJoin(failures_, "; "));
    }
    return {failed_ == 0, detail};
  }

 private:
  int checks_ = 0;
  int failed_ = 0;
  double worst_ = 0.0;
  std::vector<std::string> failures_;
};

WeightedDataset Aggregation(const QueryPlan& plan, std::string_view name,
                            const WeightedDataset& edges) {
  std::vector<WeightedDataset> out = *EvaluateBatch(plan, {{kEdgesInput, edges}});
  return out[plan.FindAggregation(name)];
}

fs::path ScratchDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "wpinq-acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const EdgePolicy kPolicies[] = {EdgePolicy::kSymmetricDirected,
                                EdgePolicy::kRawUndirected};

// 1. Worked operator examples.
Outcome GoldenExamples() {
  constexpr double kTol = 1e-9;
  Checker c;
  const WeightedDataset a{
      {Record::Int(1), 0.75}, {Record::Int(2), 2.0}, {Record::Int(3), 1.0}};
  const WeightedDataset b{{Record::Int(1), 3.0}, {Record::Int(4), 2.0}};
  auto parity = [](const Record& r) { return Record::Int(r.AsInt() % 2); };
  auto check = [&](const WeightedDataset& actual,
                   const WeightedDataset& expected, const char* what) {
    c.ExpectNear(actual, expected, kTol, what);
    c.Expect(actual.size() == expected.size(), absl::StrCat(what, " size"));
  };

  check(Select(a, parity), {{Record::Int(0), 2.0}, {Record::Int(1), 1.75}},
        "select");
  check(Where(a, [](const Record& r) { return r.AsInt() * r.AsInt() < 5; }),
        {{Record::Int(1), 0.75}, {Record::Int(2), 2.0}}, "where");
  check(SelectMany(a,
                   [](const Record& r) {
                     std::vector<WeightedRecord> out;
                     for (int i = 1; i <= r.AsInt(); ++i) {
                       out.emplace_back(Record::Int(i), 1.0);
                     }
                     return out;
                   }),
        {{Record::Int(1), 0.75 + 1.0 + 1.0 / 3.0},
         {Record::Int(2), 1.0 + 1.0 / 3.0},
         {Record::Int(3), 1.0 / 3.0}},
        "select_many");

  const WeightedDataset cset{{Record::Int(1), 0.75}, {Record::Int(2), 2.0},
                             {Record::Int(3), 1.0},  {Record::Int(4), 2.0},
                             {Record::Int(5), 2.0}};
  auto group = [](const char* k, std::vector<int> members) {
    std::vector<Record> rs;
    for (int m : members) rs.push_back(Record::Int(m));
    return Record::Tuple({Record::String(k), Record::Tuple(rs)});
  };
  check(GroupBy(
            cset,
            [](const Record& r) {
              return Record::String(r.AsInt() % 2 ? "odd" : "even");
            },
            reducers::Identity()),
        {{group("odd", {1, 3, 5}), 0.375},
         {group("odd", {3, 5}), 0.125},
         {group("odd", {5}), 0.5},
         {group("even", {2, 4}), 1.0}},
        "group_by");

  const WeightedDataset a_join{
      {Record::Int(1), 0.5}, {Record::Int(2), 2.0}, {Record::Int(3), 1.0}};
  auto t = [](int x, int y) {
    return Record::Tuple({Record::Int(x), Record::Int(y)});
  };
  check(Join(a_join, b, parity, parity,
             [](const Record& x, const Record& y) {
               return Record::Tuple({x, y});
             }),
        {{t(2, 4), 1.0}, {t(1, 1), 1.0 / 3.0}, {t(3, 1), 2.0 / 3.0}}, "join");
  check(Concat(a, b),
        {{Record::Int(1), 3.75}, {Record::Int(2), 2.0}, {Record::Int(3), 1.0},
         {Record::Int(4), 2.0}},
        "concat");
  check(Intersect(a, b), {{Record::Int(1), 0.75}}, "intersect");
  auto ix = [](int x, int i) { return Record::Indexed(Record::Int(x), i); };
  check(Shave(a, ShaveSchedule::Constant(1.0)),
        {{ix(1, 0), 0.75}, {ix(2, 0), 1.0}, {ix(2, 1), 1.0}, {ix(3, 0), 1.0}},
        "shave");
  return c.Done("8 examples");
}

// 2. ||T(A) - T(A')|| <= ||A - A'|| (summed over inputs for binary T).
Outcome Stability() {
  constexpr double kTol = 1e-9;
  constexpr int kTrials = 1000;
  Checker c;
  double worst = -INFINITY;
  int transforms = 0;
  for (const auto& [name, t] : stability::UnaryTransforms()) {
    ++transforms;
    std::mt19937_64 rng(std::hash<std::string>()(name) % 1000 + 1);
    for (int trial = 0; trial < kTrials; ++trial) {
      WeightedDataset a = stability::RandomDataset(rng, 40);
      WeightedDataset a2 = trial % 2 ? stability::RandomDataset(rng, 40)
                                     : stability::Perturb(rng, a, 40);
      double excess = DifferenceNorm(t(a), t(a2)) - DifferenceNorm(a, a2);
      worst = std::max(worst, excess);
      c.Expect(excess <= kTol, absl::StrCat(name, " trial ", trial));
    }
  }
  for (const auto& [name, t] : stability::BinaryTransforms()) {
    ++transforms;
    std::mt19937_64 rng(std::hash<std::string>()(name) % 1000 + 1);
    for (int trial = 0; trial < kTrials; ++trial) {
      WeightedDataset a = stability::RandomDataset(rng, 30);
      WeightedDataset b = stability::RandomDataset(rng, 30);
      WeightedDataset a2 = trial % 2 ? stability::RandomDataset(rng, 30)
                                     : stability::Perturb(rng, a, 30);
      WeightedDataset b2 = trial % 3 ? stability::Perturb(rng, b, 30) : b;
      double excess = DifferenceNorm(t(a, b), t(a2, b2)) -
                      DifferenceNorm(a, a2) - DifferenceNorm(b, b2);
      worst = std::max(worst, excess);
      c.Expect(excess <= kTol, absl::StrCat(name, " trial ", trial));
    }
  }
  return c.Done(absl::StrCat(transforms, " transforms x ", kTrials,
                             " trials, max excess ", worst));
}

// 3. Zero-noise query outputs against brute-force enumeration.
Outcome WeightCalculus() {
  constexpr double kTol = 1e-9;
  Checker c;
  int graph_index = 0;
  for (const oracle::Graph& g : oracle::RandomGraphs(50, 30, 0.2, 301)) {
    const std::string tag = absl::StrCat("graph ", graph_index++, " ");
    const WeightedDataset paths = oracle::PathsOracle(g);
    const WeightedDataset jdd = oracle::JddOracle(g);
    const WeightedDataset tbd = oracle::TbdOracle(g, 1);
    const WeightedDataset sbd = oracle::SbdOracle(g);
    for (EdgePolicy policy : kPolicies) {
      const WeightedDataset edges = EdgeDataset(EdgesOf(g), policy);
      c.ExpectNear(Aggregation(PathsPlan(policy), "paths", edges), paths, kTol,
                   tag + "paths");
      c.ExpectNear(Aggregation(JddPlan(policy), "jdd", edges), jdd, kTol,
                   tag + "jdd");
      c.ExpectNear(Aggregation(TbdPlan(policy), "tbd", edges), tbd, kTol,
                   tag + "tbd");
      double tbi = Aggregation(TbiPlan(policy), "tbi", edges)
                       .Weight(Record::String(kTriangleRecord));
      c.Expect(std::abs(tbi - oracle::TbiValue(g)) <= kTol, tag + "tbi");

      QueryPlan sbd_plan = SbdPlan(policy);
      std::vector<WeightedDataset> out =
          *EvaluateBatch(sbd_plan, {{kEdgesInput, edges}});
      c.ExpectNear(out[sbd_plan.FindAggregation("sbd")], sbd, kTol,
                   tag + "sbd");
      for (const auto& [r, w] : out[sbd_plan.FindNode("abcd")]) {
        const Record path = r.Element(0);
        const double db = g.degree(path.NodeAt(1));
        const double dc = g.degree(path.NodeAt(2));
        c.Expect(std::abs(w - oracle::AbcdWeight(db, dc)) <= kTol,
                 tag + "abcd weight");
      }
    }
    // Triangle counts recovered from the TbD weights.
    for (const auto& [triple, count] : oracle::TrianglesByDegree(g)) {
      c.Expect(std::abs(UnscaleTbd(Ints(triple), tbd.Weight(Ints(triple))) -
                        count) <= 1e-9,
               tag + "tbd unscale");
    }
  }
  return c.Done("50 graphs, n <= 30, both edge policies");
}

// 4. Unscaled TbD noise scale, analytically and by sampling.
Outcome NoiseCalibration() {
  Checker c;
  const double eps = 0.1;
  const int uses = 18;
  for (auto [x, y, z] : {std::tuple{2, 2, 2}, {1, 5, 9}, {3, 3, 40}}) {
    const double s = x * x + y * y + z * z;
    const double scale = UnscaledTbdNoiseScale(Ints({x, y, z}), uses, eps);
    c.Expect(std::abs(scale - 6 * s / eps) <= 1e-9 * s / eps, "closed form");
    c.Expect(std::abs((uses / eps) / (3 / s) - 6 * s / eps) <= 1e-9 * s / eps,
             "identity");
  }

  // A 4-cycle has no triangles, so TbD releases pure noise.
  const EdgePolicy policy = EdgePolicy::kRawUndirected;
  const QueryPlan plan = TbdPlan(policy);
  const WeightedDataset zero = Aggregation(
      plan, "tbd", EdgeDataset({{0, 1}, {1, 2}, {2, 3}, {0, 3}}, policy));
  c.Expect(zero.empty(), "zero signal");
  BudgetAccount account;
  account.SetCap(kEdgesInput, eps);
  c.Expect(account.ChargePlan(plan, eps / uses, "tbd").ok() &&
               std::abs(account.spent(kEdgesInput) - eps) <= 1e-12,
           "18 uses at eps/18 cost eps");

  std::string summary;
  for (auto [x, y, z] : {std::tuple{2, 3, 4}, {5, 5, 12}}) {
    const Record triple = Ints({x, y, z});
    const double expected = UnscaledTbdNoiseScale(triple, uses, eps);
    const int kSamples = 10000;
    double sum_abs = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      Measurement m = *Measurement::Take("tbd", zero, eps / uses,
                                         NoiseSource::Seeded(4000 + i));
      sum_abs += std::abs(UnscaleTbd(triple, m.Lookup(triple)));
    }
    // Mean absolute value estimates the Laplace scale.
    const double estimate = sum_abs / kSamples;
    const double rel = std::abs(estimate / expected - 1.0);
    c.Expect(rel <= 0.05, absl::StrCat("empirical scale ", estimate, " vs ",
                                       expected));
    absl::StrAppend(&summary, summary.empty() ? "" : ", ", "(", x, ",", y, ",",
                    z, ") scale ", absl::StrFormat("%.1f", estimate), " vs ",
                    absl::StrFormat("%.1f", expected), " (",
                    absl::StrFormat("%.2f", 100 * rel), "%)");
  }
  return c.Done(summary);
}

// 5. Incremental state against from-scratch evaluation along a swap walk.
Outcome IncrementalEquivalence() {
  constexpr double kTol = 1e-6;
  constexpr int kSwaps = 1000;
  Checker c;
  double worst = 0.0;
  for (EdgePolicy policy : kPolicies) {
    for (GraphQuery q : {GraphQuery::kTbi, GraphQuery::kJdd, GraphQuery::kTbd}) {
      std::mt19937_64 rng(500 + static_cast<int>(q));
      const std::vector<Edge> start = EdgesOf(oracle::RandomGraph(40, 0.15, rng()));
      const std::vector<Edge> secret =
          EdgesOf(oracle::RandomGraph(40, 0.15, rng()));
      auto m = std::make_shared<Measurement>(*MeasureGraph(
          secret, {.query = q, .policy = policy, .epsilon = 0.5,
                   .bounds = {.max_degree = 40}, .noise_seed = rng()}));
      SyntheticState state = *SyntheticState::Create(start, policy);
      c.Expect(state.AddTarget(q, 1, m).ok(), "attach");
      const SyntheticState::Target& target = state.targets()[0];
      const QueryPlan plan = PlanFor(q, policy, 1);
      const std::string tag =
          absl::StrCat(GraphQueryName(q), " ", EdgePolicyName(policy), " ");
      int swaps = 0;
      while (swaps < kSwaps) {
        std::optional<EdgeSwap> swap = ProposeSwap(state.graph(), rng);
        if (!swap.has_value()) continue;
        ++swaps;
        c.Expect(state.Apply(*swap).ok(), tag + "apply");
        // Roll back a third of the swaps, as a rejected proposal does.
        if (rng() % 3 == 0) c.Expect(state.Revert(*swap).ok(), tag + "revert");
        const WeightedDataset scratch = Aggregation(
            plan, target.aggregation,
            EdgeDataset(state.graph().Sorted(), policy));
        const double diff = MaxAbsDifference(
            target.evaluator->Aggregate(target.aggregation), scratch);
        const double tracker =
            std::abs(target.evaluator->Discrepancy(target.aggregation) -
                     target.evaluator->RecomputeDiscrepancy(target.aggregation));
        worst = std::max({worst, diff, tracker});
        c.Expect(diff <= kTol, absl::StrCat(tag, "output at swap ", swaps));
        c.Expect(tracker <= kTol,
                 absl::StrCat(tag, "discrepancy at swap ", swaps));
      }
    }
  }
  return c.Done(absl::StrCat("TbI, JDD, TbD x 2 policies x ", kSwaps,
                             " swaps, max deviation ", worst));
}

// 6. Use counts and workflow costs on the ledger.
Outcome BudgetAccounting() {
  Checker c;
  const EdgePolicy raw = EdgePolicy::kRawUndirected;
  const EdgePolicy sym = EdgePolicy::kSymmetricDirected;
  c.Expect(*CountUses(TbdPlan(raw), kEdgesInput) == 18, "tbd raw 18");
  c.Expect(*CountUses(JddPlan(sym), kEdgesInput) == 4, "jdd 4");
  c.Expect(*CountUses(TbiPlan(sym), kEdgesInput) == 4, "tbi 4");
  c.Expect(*CountUses(SbdPlan(sym), kEdgesInput) == 12, "sbd 12");
  // Raw input is concatenated with its transpose, doubling every use.
  c.Expect(*CountUses(TbdPlan(sym), kEdgesInput) == 9, "tbd symmetric 9");
  for (auto make : {JddPlan, TbiPlan, SbdPlan}) {
    c.Expect(*CountUses(make(raw), kEdgesInput) ==
                 2 * *CountUses(make(sym), kEdgesInput),
             "raw doubles uses");
  }

  // The CLI ledger after the seed phase and after TbI.
  const fs::path dir = ScratchDir("budget");
  const std::string input = (dir / "k3.edges").string();
  std::ofstream(input) << FormatEdgeList({{0, 1}, {0, 2}, {1, 2}});
  RunConfig config;
  config.input = input;
  config.out_dir = (dir / "out").string();
  config.epsilon = 0.1;
  config.budget = 10.0;
  config.queries = {"degseq", "ccdf", "nodes"};
  std::ostringstream log;
  c.Expect(RunMeasure(config, log).ok(), "seed measure");
  BudgetAccount account = *BudgetAccount::Parse(Slurp(BudgetPath(input)));
  const double seed = account.spent(kEdgesInput);
  c.Expect(seed == 3 * config.epsilon, absl::StrCat("seed phase ", seed));
  config.queries = {"tbi"};
  c.Expect(RunMeasure(config, log).ok(), "tbi measure");
  account = *BudgetAccount::Parse(Slurp(BudgetPath(input)));
  const double total = account.spent(kEdgesInput);
  c.Expect(total == 7 * config.epsilon, absl::StrCat("tbi workflow ", total));
  return c.Done(absl::StrCat("seed phase ", seed, " = 3 x 0.1, TbI workflow ",
                             total, " = 7 x 0.1"));
}

// 7. Degree-sequence regression on preferential-attachment graphs.
Outcome DegreeRegression() {
  Checker c;
  const int kTrials = 20;
  int better = 0;
  double raw_total = 0.0, fit_total = 0.0;
  for (int trial = 0; trial < kTrials; ++trial) {
    std::mt19937_64 rng(700 + trial);
    const std::vector<Edge> g = *BarabasiAlbert(500, 2000, 0.5, rng);
    const std::vector<std::int64_t> truth = DegreeSequence(g);
    auto measure = [&](bool zero_noise) {
      std::vector<Measurement> ms;
      for (GraphQuery q : {GraphQuery::kDegseq, GraphQuery::kCcdf,
                           GraphQuery::kNodeCount}) {
        ms.push_back(*MeasureGraph(
            g, {.query = q, .policy = EdgePolicy::kSymmetricDirected,
                .epsilon = 0.1,
                .bounds = {.max_degree = 1024, .max_nodes = 1024},
                .noise_seed = 7000u + trial, .zero_noise = zero_noise}));
      }
      return ms;
    };

    std::vector<Measurement> exact = measure(true);
    std::vector<std::int64_t> fit = *FitDegrees(exact[0], exact[1], exact[2]);
    std::vector<std::int64_t> padded = truth;
    padded.resize(std::max(fit.size(), truth.size()), 0);
    fit.resize(padded.size(), 0);
    c.Expect(fit == padded, absl::StrCat("noiseless recovery, trial ", trial));

    // L1 over the first |V| entries.
    std::vector<Measurement> noisy = measure(false);
    fit = *FitDegrees(noisy[0], noisy[1], noisy[2]);
    fit.resize(std::max(fit.size(), truth.size()), 0);
    double raw_l1 = 0.0, fit_l1 = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      raw_l1 += std::abs(noisy[0].Lookup(Record::Int(i)) - truth[i]);
      fit_l1 += std::abs(static_cast<double>(fit[i] - truth[i]));
    }
    raw_total += raw_l1;
    fit_total += fit_l1;
    if (fit_l1 < raw_l1) ++better;
  }
  c.Expect(better * 10 >= kTrials * 9,
           absl::StrCat("fit beats raw in ", better, "/", kTrials));
  return c.Done(absl::StrFormat(
      "fitted L1 < noisy L1 in %d/%d trials; mean L1 noisy %.1f, fitted %.1f",
      better, kTrials, raw_total / kTrials, fit_total / kTrials));
}

// 8 and 9. Synthesis from TbI and degree measurements of a graph with
// planted triangles and of its degree-preserving rewiring.
struct Discrimination {
  std::vector<double> real_triangles;
  std::vector<double> rewired_triangles;
  int separated = 0;
  bool degrees_preserved = true;
  double seconds = 0.0;
};

struct Benchmark {
  std::vector<Edge> real;
  std::vector<Edge> rewired;
};

const Benchmark& DiscriminationBenchmark() {
  static const Benchmark* benchmark = [] {
    std::mt19937_64 rng(7);
    auto* b = new Benchmark;
    b->real = PlantedTriangleGraph(200, 1000, 0, 10, rng);
    b->rewired = RewireGraph(b->real, 10, rng);
    return b;
  }();
  return *benchmark;
}

constexpr int kDiscriminationTrials = 5;

const Discrimination& DiscriminationAt(double eps) {
  static std::map<double, Discrimination> cache;
  auto it = cache.find(eps);
  if (it != cache.end()) return it->second;
  const auto start = std::chrono::steady_clock::now();
  const Benchmark& bench = DiscriminationBenchmark();
  Discrimination d;
  for (int trial = 1; trial <= kDiscriminationTrials; ++trial) {
    double triangles[2];
    for (int which = 0; which < 2; ++which) {
      const std::vector<Edge>& edges = which == 0 ? bench.real : bench.rewired;
      std::vector<std::shared_ptr<Measurement>> ms;
      for (GraphQuery q : {GraphQuery::kDegseq, GraphQuery::kCcdf,
                           GraphQuery::kNodeCount, GraphQuery::kTbi}) {
        ms.push_back(std::make_shared<Measurement>(*MeasureGraph(
            edges, {.query = q, .policy = EdgePolicy::kSymmetricDirected,
                    .epsilon = eps,
                    .bounds = {.max_degree = 64, .max_nodes = 256},
                    .noise_seed = 100u * trial})));
      }
      std::vector<std::int64_t> walk_degrees;
      bool preserved = true;
      SynthesisConfig config{
          .score = {.pow = 1e4},
          .steps = 50000,
          .trace_interval = 1000,
          .graph_seed = 200u * trial,
          .walk_seed = 300u * trial,
          .observer = [&](std::int64_t step, const SyntheticState& state) {
            std::vector<std::int64_t> degrees =
                DegreeSequence(state.graph().edges());
            if (step == 0) walk_degrees = degrees;
            preserved = preserved && degrees == walk_degrees;
          }};
      SynthesisResult r = *Synthesize(ms, config);
      preserved = preserved && DegreeSequence(r.edges) ==
                                   DegreeSequence(r.seed.edges);
      d.degrees_preserved = d.degrees_preserved && preserved;
      triangles[which] = static_cast<double>(CountTriangles(r.edges));
    }
    d.real_triangles.push_back(triangles[0]);
    d.rewired_triangles.push_back(triangles[1]);
    if (triangles[0] >= 5 * triangles[1]) ++d.separated;
  }
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
  return cache.emplace(eps, std::move(d)).first->second;
}

std::string DescribeRatios(const Discrimination& d) {
  std::vector<std::string> parts;
  for (int i = 0; i < kDiscriminationTrials; ++i) {
    parts.push_back(absl::StrFormat("%.0f/%.0f", d.real_triangles[i],
                                    d.rewired_triangles[i]));
  }
  return absl::StrJoin(parts, " ");
}

double Variance(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / (xs.size() - 1);
}

Outcome McmcDiscrimination() {
  Checker c;
  const Benchmark& bench = DiscriminationBenchmark();
  const Discrimination& d = DiscriminationAt(0.1);
  c.Expect(d.separated >= 4,
           absl::StrCat(d.separated, "/5 trials separated by 5x"));
  c.Expect(d.degrees_preserved, "degree multiset changed during the walk");
  return c.Done(absl::StrFormat(
      "graph %d edges, %d vs %d triangles; synthetic real/rewired triangles "
      "%s; %d/5 trials >= 5x",
      static_cast<int>(bench.real.size()),
      static_cast<int>(CountTriangles(bench.real)),
      static_cast<int>(CountTriangles(bench.rewired)), DescribeRatios(d),
      d.separated));
}

Outcome EpsilonRobustness() {
  Checker c;
  std::string summary;
  double previous_variance = INFINITY;
  for (double eps : {0.01, 0.1, 1.0}) {
    const Discrimination& d = DiscriminationAt(eps);
    const double variance = Variance(d.real_triangles);
    c.Expect(d.separated >= 4,
             absl::StrCat("eps ", eps, ": ", d.separated, "/5 separated"));
    c.Expect(d.degrees_preserved, absl::StrCat("eps ", eps, ": degrees"));
    c.Expect(variance <= previous_variance,
             absl::StrCat("eps ", eps, ": variance ", variance,
                          " exceeds ", previous_variance));
    previous_variance = variance;
    absl::StrAppend(&summary, summary.empty() ? "" : "; ", "eps ", eps, ": ",
                    DescribeRatios(d), ", ", d.separated, "/5, var ",
                    absl::StrFormat("%.0f", variance));
  }
  return c.Done(summary);
}

// 10. The CLI pipeline twice with identical seeds.
Outcome Determinism() {
  Checker c;
  auto run = [&](const std::string& tag) {
    const fs::path dir = ScratchDir(tag);
    std::ostringstream log;
    RunConfig config;
    config.out_dir = dir.string();
    config.nodes = 200;
    config.edges = 800;
    config.seed_graph = 11;
    c.Expect(RunGenBenchmark(config, log).ok(), "gen-benchmark");

    config.input = (dir / "benchmark.edges").string();
    config.out_dir = (dir / "measurements").string();
    config.queries = {"degseq", "ccdf", "nodes", "tbi", "jdd"};
    config.budget = 10.0;
    config.seed_noise = 12;
    c.Expect(RunMeasure(config, log).ok(), "measure");

    for (const auto& q : config.queries) {
      config.measurements.push_back(
          (dir / "measurements" / MeasurementFileName(q)).string());
    }
    config.out_dir = (dir / "synthetic").string();
    config.steps = 5000;
    config.trace_interval = 250;
    config.seed_graph = 13;
    config.seed_walk = 14;
    c.Expect(RunSynthesize(config, log).ok(), "synthesize");

    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file()) {
        files[fs::relative(entry.path(), dir).string()] = Slurp(entry.path());
      }
    }
    return files;
  };
  const auto first = run("run-a");
  const auto second = run("run-b");
  c.Expect(first.size() == second.size(), "file sets differ");
  for (const auto& [name, bytes] : first) {
    auto it = second.find(name);
    c.Expect(it != second.end() && it->second == bytes, name + " differs");
  }
  for (const char* name : {"synthetic/trace.csv", "synthetic/synthetic.edges",
                           "measurements/tbi.measurement"}) {
    c.Expect(first.count(name) == 1, absl::StrCat(name, " missing"));
  }
  std::vector<std::string> names;
  for (const auto& [name, bytes] : first) names.push_back(name);
  return c.Done(absl::StrCat(first.size(), " files byte-identical: ",
                             absl::StrJoin(names, ", ")));
}

std::vector<Criterion> Criteria() {
  return {
      {1, "golden operator examples", 1, GoldenExamples},
      {2, "stability suite", 30, Stability},
      {3, "weight-calculus oracles", 120, WeightCalculus},
      {4, "noise calibration", 60, NoiseCalibration},
      {5, "incremental equivalence", 300, IncrementalEquivalence},
      {6, "budget accounting", 0, BudgetAccounting},
      {7, "degree-sequence regression", 120, DegreeRegression},
      {8, "MCMC discrimination", 600, McmcDiscrimination},
      {9, "epsilon robustness", 0, EpsilonRobustness},
      {10, "determinism", 0, Determinism},
  };
}

}  // namespace
}  // namespace wpinq

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const wpinq::Criterion& criterion : wpinq::Criteria()) {
    if (!selected.empty() && !selected.count(criterion.number)) continue;
    const auto start = std::chrono::steady_clock::now();
    wpinq::Outcome outcome = criterion.run();
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (criterion.time_limit_seconds > 0 &&
        seconds > criterion.time_limit_seconds) {
      outcome.pass = false;
      outcome.detail += absl::StrFormat("; exceeded %.0f s limit",
                                        criterion.time_limit_seconds);
    }
    all_pass = all_pass && outcome.pass;
    std::printf("%s criterion %d (%s) [%.1f s]: %s\n",
                outcome.pass ? "PASS" : "FAIL", criterion.number,
                criterion.name, seconds, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}

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

#include "wpinq/cli/commands.h"

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <utility>

#include "absl/strings/str_cat.h"
#include "wpinq/cli/workflow.h"
#include "wpinq/core/real_format.h"
#include "wpinq/graph/edges.h"
#include "wpinq/graph/queries.h"
#include "wpinq/graph/sala.h"
#include "wpinq/incremental/plan.h"
#include "wpinq/inference/generators.h"
#include "wpinq/inference/mcmc.h"
#include "wpinq/inference/statistics.h"
#include "wpinq/privacy/budget.h"

namespace wpinq {
namespace {

constexpr char kSalaQuery[] = "jdd-sala";

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

absl::Status WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) return absl::InternalError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

std::string OutPath(const RunConfig& config, const std::string& name) {
  return (std::filesystem::path(config.out_dir) / name).string();
}

absl::Status MakeOutDir(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create ", config.out_dir, ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Edge>> ReadGraph(const std::string& path) {
  if (path.empty()) return absl::InvalidArgumentError("--input is required");
  absl::StatusOr<std::vector<Edge>> edges = ReadEdgeList(path);
  if (!edges.ok()) return edges.status();
  return SimpleUndirected(*edges);
}

absl::Status CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("--epsilon must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<BudgetAccount> LoadBudget(const RunConfig& config) {
  const std::string path = BudgetPath(config.input);
  if (std::filesystem::exists(path)) {
    absl::StatusOr<std::string> text = ReadFile(path);
    if (!text.ok()) return text.status();
    absl::StatusOr<BudgetAccount> account = BudgetAccount::Parse(*text);
    if (!account.ok()) return account.status();
    if (config.budget.has_value() &&
        *config.budget != account->cap(kEdgesInput)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "ledger ", path, " already has cap ",
          FormatReal(account->cap(kEdgesInput)), "; a cap cannot be changed"));
    }
    return account;
  }
  if (!config.budget.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("no ledger at ", path, "; pass --budget to create one"));
  }
  if (!(*config.budget > 0.0)) {
    return absl::InvalidArgumentError("--budget must be positive");
  }
  BudgetAccount account;
  account.SetCap(kEdgesInput, *config.budget);
  return account;
}

void PrintLedger(const BudgetAccount& account, std::ostream& out) {
  for (const BudgetAccount::Charge& c : account.charges(kEdgesInput)) {
    out << "charge\t" << c.label << "\tuses=" << c.uses
        << "\tepsilon=" << FormatReal(c.epsilon)
        << "\tcost=" << FormatReal(c.cost()) << "\n";
  }
  out << "spent\t" << FormatReal(account.spent(kEdgesInput)) << "\tcap\t"
      << FormatReal(account.cap(kEdgesInput)) << "\n";
}

std::string SalaText(const absl::btree_map<DegreePair, double>& cells,
                     double epsilon) {
  std::string text = absl::StrCat("# query ", kSalaQuery, "\n# epsilon ",
                                  FormatReal(epsilon), "\n");
  for (const auto& [pair, value] : cells) {
    absl::StrAppend(&text, pair.first, "\t", pair.second, "\t",
                    FormatReal(value), "\n");
  }
  return text;
}

}  // namespace

std::string BudgetPath(const std::string& input) {
  return input + ".budget";
}

std::string MeasurementFileName(const std::string& query) {
  return query + ".measurement";
}

absl::Status RunMeasure(const RunConfig& config, std::ostream& out) {
  if (absl::Status s = CheckEpsilon(config.epsilon); !s.ok()) return s;
  if (config.queries.empty()) {
    return absl::InvalidArgumentError("--query is required");
  }
  absl::StatusOr<EdgePolicy> policy = ParseEdgePolicy(config.symmetrization);
  if (!policy.ok()) return policy.status();
  absl::StatusOr<BudgetAccount> account = LoadBudget(config);
  if (!account.ok()) return account.status();

  // Charge every query before anything is measured.
  std::vector<std::optional<GraphQuery>> queries;
  for (const std::string& name : config.queries) {
    absl::Status charged;
    double cost = 0.0;
    if (name == kSalaQuery) {
      queries.push_back(std::nullopt);
      cost = config.epsilon;
      charged = account->ChargeUses(kEdgesInput, 1, config.epsilon, name);
    } else {
      absl::StatusOr<GraphQuery> q = ParseGraphQuery(name);
      if (!q.ok()) return q.status();
      queries.push_back(*q);
      QueryPlan plan = PlanFor(*q, *policy, config.bucket_k);
      absl::StatusOr<int> uses = CountUses(plan, kEdgesInput);
      if (!uses.ok()) return uses.status();
      cost = *uses * config.epsilon;
      charged = account->ChargePlan(plan, config.epsilon, name);
    }
    if (!charged.ok()) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "refused: ", name, " would cost ", FormatReal(cost), "; spent ",
          FormatReal(account->spent(kEdgesInput)), " of cap ",
          FormatReal(account->cap(kEdgesInput)), "; ledger unchanged"));
    }
  }

  if (absl::Status s = MakeOutDir(config); !s.ok()) return s;
  std::vector<std::pair<std::string, std::string>> files;
  {
    // The protected graph lives only in this scope.
    absl::StatusOr<std::vector<Edge>> edges = ReadGraph(config.input);
    if (!edges.ok()) return edges.status();
    DomainBounds bounds{.max_degree = config.max_degree,
                        .max_nodes = config.max_nodes,
                        .bucket = config.bucket_k};
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const std::string& name = config.queries[i];
      if (!queries[i].has_value()) {
        NoiseSource noise =
            config.zero_noise
                ? NoiseSource::ZeroNoise()
                : NoiseSource::Seeded(DeriveSeed(config.seed_noise, name));
        absl::StatusOr<absl::btree_map<DegreePair, double>> cells =
            SalaJdd(*edges, config.epsilon, noise, config.max_degree);
        if (!cells.ok()) return cells.status();
        files.emplace_back(name + ".txt", SalaText(*cells, config.epsilon));
        continue;
      }
      absl::StatusOr<Measurement> m = MeasureGraph(
          *edges, {.query = *queries[i],
                   .policy = *policy,
                   .epsilon = config.epsilon,
                   .bounds = bounds,
                   .noise_seed = config.seed_noise,
                   .zero_noise = config.zero_noise});
      if (!m.ok()) return m.status();
      absl::StatusOr<std::string> text = m->Serialize();
      if (!text.ok()) return text.status();
      files.emplace_back(MeasurementFileName(name), *std::move(text));
    }
  }
  for (const auto& [name, text] : files) {
    if (absl::Status s = WriteFile(OutPath(config, name), text); !s.ok()) {
      return s;
    }
    out << "wrote\t" << OutPath(config, name) << "\n";
  }
  if (absl::Status s = WriteFile(BudgetPath(config.input), account->Serialize());
      !s.ok()) {
    return s;
  }
  PrintLedger(*account, out);
  return absl::OkStatus();
}

absl::Status RunSynthesize(const RunConfig& config, std::ostream& out) {
  if (config.steps < 0) return absl::InvalidArgumentError("--steps < 0");
  if (!(config.pow > 0.0)) return absl::InvalidArgumentError("--pow <= 0");
  if (config.measurements.empty()) {
    return absl::InvalidArgumentError("--measurements is required");
  }
  std::vector<std::shared_ptr<Measurement>> measurements;
  for (const std::string& path : config.measurements) {
    absl::StatusOr<std::string> text = ReadFile(path);
    if (!text.ok()) return text.status();
    absl::StatusOr<Measurement> m = Measurement::Parse(*text);
    if (!m.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ": ", m.status().message()));
    }
    measurements.push_back(std::make_shared<Measurement>(*std::move(m)));
  }
  absl::StatusOr<SynthesisResult> result = Synthesize(
      measurements, {.score = {.pow = config.pow},
                     .steps = config.steps,
                     .trace_interval = config.trace_interval,
                     .graph_seed = config.seed_graph,
                     .walk_seed = config.seed_walk});
  if (!result.ok()) return result.status();
  if (absl::Status s = MakeOutDir(config); !s.ok()) return s;
  const std::string edges_path = OutPath(config, "synthetic.edges");
  const std::string trace_path = OutPath(config, "trace.csv");
  if (absl::Status s = WriteFile(edges_path, FormatEdgeList(result->edges));
      !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteFile(trace_path, result->trace.ToText());
      !s.ok()) {
    return s;
  }
  const McmcStats& st = result->stats;
  out << "fitted_nodes\t" << result->seed.degrees.size() << "\n"
      << "degree_repairs\t" << result->seed.repairs << "\n"
      << "seed_generator\t"
      << (result->seed.havel_hakimi ? "havel-hakimi" : "stub-matching")
      << "\n"
      << "edges\t" << result->edges.size() << "\n"
      << "steps\t" << st.steps << "\taccepted\t" << st.accepted
      << "\trejected\t" << st.rejected << "\tinvalid\t" << st.invalid << "\n"
      << "triangles\t" << CountTriangles(result->edges) << "\n"
      << "wrote\t" << edges_path << "\n"
      << "wrote\t" << trace_path << "\n";
  return absl::OkStatus();
}

absl::Status RunGenBenchmark(const RunConfig& config, std::ostream& out) {
  if (config.nodes < 1 || config.edges < 0) {
    return absl::InvalidArgumentError("need --nodes >= 1 and --edges >= 0");
  }
  std::mt19937_64 rng(config.seed_graph);
  absl::StatusOr<std::vector<Edge>> graph =
      BarabasiAlbert(config.nodes, config.edges, config.beta, rng);
  if (!graph.ok()) return graph.status();
  std::vector<Edge> rewired = RewireGraph(*graph, config.rewire_swaps, rng);
  if (absl::Status s = MakeOutDir(config); !s.ok()) return s;
  const std::string path = OutPath(config, "benchmark.edges");
  const std::string rewired_path = OutPath(config, "benchmark-rewired.edges");
  if (absl::Status s = WriteFile(path, FormatEdgeList(*graph)); !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteFile(rewired_path, FormatEdgeList(rewired));
      !s.ok()) {
    return s;
  }
  out << "nodes\t" << Degrees(*graph).size() << "\n"
      << "edges\t" << graph->size() << "\n"
      << "triangles\t" << CountTriangles(*graph) << "\n"
      << "rewired_triangles\t" << CountTriangles(rewired) << "\n"
      << "wrote\t" << path << "\n"
      << "wrote\t" << rewired_path << "\n";
  return absl::OkStatus();
}

absl::Status RunReport(const RunConfig& config, std::ostream& out) {
  absl::StatusOr<std::vector<Edge>> edges = ReadGraph(config.input);
  if (!edges.ok()) return edges.status();
  Assortativity r = DegreeAssortativity(*edges);
  out << "nodes\t" << Degrees(*edges).size() << "\n"
      << "edges\t" << edges->size() << "\n"
      << "sum_squared_degrees\t" << SumSquaredDegrees(*edges) << "\n"
      << "triangles\t" << CountTriangles(*edges) << "\n"
      << "assortativity\t"
      << (r.defined ? FormatReal(r.r) : std::string("undefined")) << "\n";
  if (config.steps <= 0) return absl::OkStatus();

  absl::StatusOr<EdgePolicy> policy = ParseEdgePolicy(config.symmetrization);
  if (!policy.ok()) return policy.status();
  std::vector<std::string> names = config.queries;
  if (names.empty()) names.push_back(GraphQueryName(GraphQuery::kTbi));
  absl::StatusOr<SyntheticState> state =
      SyntheticState::Create(*edges, *policy);
  if (!state.ok()) return state.status();
  DomainBounds bounds{.max_degree = config.max_degree,
                      .max_nodes = config.max_nodes,
                      .bucket = config.bucket_k};
  for (const std::string& name : names) {
    absl::StatusOr<GraphQuery> q = ParseGraphQuery(name);
    if (!q.ok()) return q.status();
    // Exact measurements: the report releases timings only.
    absl::StatusOr<Measurement> m = MeasureGraph(
        *edges, {.query = *q,
                 .policy = *policy,
                 .epsilon = config.epsilon,
                 .bounds = bounds,
                 .zero_noise = true});
    if (!m.ok()) return m.status();
    absl::Status s = state->AddTarget(
        *q, config.bucket_k, std::make_shared<Measurement>(*std::move(m)));
    if (!s.ok()) return s;
  }
  std::mt19937_64 rng(config.seed_walk);
  absl::StatusOr<McmcStats> stats =
      RunMcmc(*state, {.pow = config.pow}, {.steps = config.steps}, rng);
  if (!stats.ok()) return stats.status();
  out << "steps\t" << stats->steps << "\taccepted\t" << stats->accepted
      << "\n"
      << "steps_per_second\t"
      << FormatReal(stats->seconds > 0 ? stats->steps / stats->seconds : 0.0)
      << "\n";
  for (const SyntheticState::Target& t : state->targets()) {
    out << "index\t" << t.name << "\tnode\tkind\tstate_entries\t"
        << "output_records\temitted\n";
    std::size_t total = 0;
    for (const Evaluator::NodeStats& ns : t.evaluator->Stats()) {
      total += ns.state_entries;
      out << "index\t" << t.name << "\t" << ns.node << "\t"
          << OpKindName(ns.kind) << "\t" << ns.state_entries << "\t"
          << ns.output_records << "\t" << ns.emitted << "\n";
    }
    out << "index_total\t" << t.name << "\t" << total << "\n";
  }
  return absl::OkStatus();
}

}  // namespace wpinq

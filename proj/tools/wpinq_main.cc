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

// wpinq: measure protected graphs, synthesize graphs from measurements,
// generate benchmarks and report MCMC throughput.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "wpinq/cli/commands.h"

namespace {

void AddCommon(CLI::App* cmd, wpinq::RunConfig& c) {
  cmd->add_option("--out-dir", c.out_dir, "Directory for output files");
}

void AddPolicy(CLI::App* cmd, wpinq::RunConfig& c) {
  cmd->add_option("--symmetrization", c.symmetrization,
                  "raw-undirected or symmetric-directed")
      ->check(CLI::IsMember({"raw-undirected", "symmetric-directed"}));
}

void AddBounds(CLI::App* cmd, wpinq::RunConfig& c) {
  cmd->add_option("--bucket-k", c.bucket_k, "TbD degree bucket width")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-degree", c.max_degree,
                  "Public degree bound of released record domains")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-nodes", c.max_nodes,
                  "Public node-count bound of the degree sequence domain")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted differential privacy for graph analysis"};
  app.require_subcommand(1);
  wpinq::RunConfig c;

  CLI::App* measure =
      app.add_subcommand("measure", "Take noisy measurements of a graph");
  measure->add_option("--input", c.input, "Protected edge list")->required();
  measure
      ->add_option("--query", c.queries,
                   "ccdf, degseq, jdd, jdd-sala, tbd, sbd, tbi or nodes")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember(
          {"ccdf", "degseq", "jdd", "jdd-sala", "tbd", "sbd", "tbi", "nodes"}));
  measure->add_option("--epsilon", c.epsilon, "Per-measurement epsilon")
      ->check(CLI::PositiveNumber);
  measure->add_option("--budget", c.budget,
                      "Total budget cap when creating the ledger");
  measure->add_option("--seed-noise", c.seed_noise, "Noise seed");
  measure->add_flag("--zero-noise", c.zero_noise,
                    "Exact values, for testing only");
  AddPolicy(measure, c);
  AddBounds(measure, c);
  AddCommon(measure, c);

  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "Fit a synthetic graph to measurement files");
  synthesize->add_option("--measurements", c.measurements,
                         "Measurement files")
      ->required()
      ->delimiter(',');
  synthesize->add_option("--steps", c.steps, "MCMC steps")
      ->check(CLI::NonNegativeNumber);
  synthesize->add_option("--pow", c.pow, "Score exponent")
      ->check(CLI::PositiveNumber);
  synthesize->add_option("--seed-graph", c.seed_graph, "Seed-graph seed");
  synthesize->add_option("--seed-walk", c.seed_walk, "MCMC seed");
  synthesize->add_option("--trace-interval", c.trace_interval,
                         "Steps between trace points (0: none)")
      ->check(CLI::NonNegativeNumber);
  AddCommon(synthesize, c);

  CLI::App* gen = app.add_subcommand(
      "gen-benchmark", "Preferential-attachment graph and its rewiring");
  gen->add_option("--nodes", c.nodes, "Node count")->check(CLI::PositiveNumber);
  gen->add_option("--edges", c.edges, "Target edge count")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--beta", c.beta, "Dynamical exponent in (0, 1)");
  gen->add_option("--seed-graph", c.seed_graph, "Generator seed");
  AddCommon(gen, c);

  CLI::App* report = app.add_subcommand(
      "report", "Graph statistics and MCMC throughput");
  report->add_option("--input", c.input, "Edge list")->required();
  report->add_option("--steps", c.steps, "MCMC steps to time (0: none)")
      ->check(CLI::NonNegativeNumber);
  report->add_option("--query", c.queries, "Target queries (default tbi)")
      ->delimiter(',')
      ->check(CLI::IsMember({"ccdf", "degseq", "jdd", "tbd", "sbd", "tbi",
                             "nodes"}));
  report->add_option("--pow", c.pow, "Score exponent")
      ->check(CLI::PositiveNumber);
  report->add_option("--seed-walk", c.seed_walk, "MCMC seed");
  AddPolicy(report, c);
  AddBounds(report, c);

  CLI11_PARSE(app, argc, argv);

  absl::Status status;
  if (measure->parsed()) {
    status = wpinq::RunMeasure(c, std::cout);
  } else if (synthesize->parsed()) {
    status = wpinq::RunSynthesize(c, std::cout);
  } else if (gen->parsed()) {
    status = wpinq::RunGenBenchmark(c, std::cout);
  } else if (report->parsed()) {
    status = wpinq::RunReport(c, std::cout);
  }
  if (!status.ok()) {
    std::cerr << "wpinq: " << status.message() << "\n";
    return 1;
  }
  return 0;
}

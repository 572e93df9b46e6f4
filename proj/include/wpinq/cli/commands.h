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

// Subcommands of the wpinq command-line tool. Each writes its report to
// `out` and its files under RunConfig::out_dir.

#ifndef WPINQ_CLI_COMMANDS_H_
#define WPINQ_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace wpinq {

struct RunConfig {
  std::string input;
  // ccdf, degseq, jdd, jdd-sala, tbd, sbd, tbi or nodes.
  std::vector<std::string> queries;
  double epsilon = 0.1;
  // Cap for a new budget ledger.
  std::optional<double> budget;
  std::int64_t bucket_k = 1;
  std::int64_t steps = 0;
  double pow = 10000.0;
  std::uint64_t seed_noise = 0;
  std::uint64_t seed_graph = 0;
  std::uint64_t seed_walk = 0;
  std::string symmetrization = "symmetric-directed";
  std::string out_dir = ".";
  bool zero_noise = false;
  std::int64_t trace_interval = 0;
  // Measurement files for synthesize.
  std::vector<std::string> measurements;
  // Public domain bounds for measure; 0 max_degree means 64.
  std::int64_t max_degree = 64;
  std::int64_t max_nodes = 1024;
  // gen-benchmark.
  std::int64_t nodes = 100;
  std::int64_t edges = 300;
  double beta = 0.5;
  int rewire_swaps = 10;
};

// Path of the budget ledger kept next to a protected input.
std::string BudgetPath(const std::string& input);
// Measurement file name for a query.
std::string MeasurementFileName(const std::string& query);

// Charges the budget ledger, then writes one measurement file per query.
// Refuses without touching the ledger if any query would exceed the cap.
absl::Status RunMeasure(const RunConfig& config, std::ostream& out);
// Fits the measurements and writes synthetic.edges and trace.csv.
absl::Status RunSynthesize(const RunConfig& config, std::ostream& out);
// Writes benchmark.edges (preferential attachment) and its degree-preserving
// rewiring benchmark-rewired.edges.
absl::Status RunGenBenchmark(const RunConfig& config, std::ostream& out);
// Prints graph size statistics and, for steps > 0, MCMC throughput and
// operator index sizes when fitting the graph's own exact measurements.
absl::Status RunReport(const RunConfig& config, std::ostream& out);

}  // namespace wpinq

#endif  // WPINQ_CLI_COMMANDS_H_

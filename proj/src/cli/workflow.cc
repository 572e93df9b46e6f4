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

#include "wpinq/cli/workflow.h"

#include <random>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "wpinq/graph/regression.h"
#include "wpinq/incremental/evaluator.h"

namespace wpinq {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool IsDegreeQuery(GraphQuery q) {
  return q == GraphQuery::kDegseq || q == GraphQuery::kCcdf ||
         q == GraphQuery::kNodeCount;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t base, std::string_view label) {
  // FNV-1a over the label, mixed with the base.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return SplitMix64(base ^ SplitMix64(h));
}

absl::StatusOr<Measurement> MeasureGraph(const std::vector<Edge>& edges,
                                         const MeasureSpec& spec) {
  if (!(spec.epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (spec.bounds.bucket < 1) {
    return absl::InvalidArgumentError("bucket must be at least 1");
  }
  const std::string name = GraphQueryName(spec.query);
  QueryPlan plan = PlanFor(spec.query, spec.policy, spec.bounds.bucket);
  absl::StatusOr<std::vector<WeightedDataset>> out =
      EvaluateBatch(plan, {{kEdgesInput, EdgeDataset(edges, spec.policy)}});
  if (!out.ok()) return out.status();
  NoiseSource noise = spec.zero_noise
                          ? NoiseSource::ZeroNoise()
                          : NoiseSource::Seeded(
                                DeriveSeed(spec.noise_seed, name));
  absl::StatusOr<Measurement> m = Measurement::Take(
      name, std::move((*out)[plan.FindAggregation(AggregationName(spec.query))]),
      spec.epsilon, std::move(noise));
  if (!m.ok()) return m.status();
  m->SetAttribute(kPolicyAttribute, EdgePolicyName(spec.policy));
  m->SetAttribute(kBucketAttribute, absl::StrCat(spec.bounds.bucket));
  m->SetAttribute("max_degree", absl::StrCat(spec.bounds.max_degree));
  m->SetAttribute("max_nodes", absl::StrCat(spec.bounds.max_nodes));
  m->Detach(QueryDomain(spec.query, spec.bounds));
  return m;
}

absl::StatusOr<std::vector<std::int64_t>> FitDegrees(Measurement& degseq,
                                                     Measurement& ccdf,
                                                     Measurement& nodes) {
  // Every node weighs 1/2 in the node-count query.
  const double noisy_nodes = 2.0 * nodes.Lookup(Record::String(kNodesRecord));
  const std::int64_t n = DefaultGridSize(
      std::max(0.0, noisy_nodes), std::min(degseq.epsilon(), ccdf.epsilon()));
  // Looked up in index order so the memoized noise does not depend on the
  // search order of the regression.
  std::vector<double> v(n), h(n);
  for (std::int64_t i = 0; i < n; ++i) v[i] = degseq.Lookup(Record::Int(i));
  for (std::int64_t i = 0; i < n; ++i) h[i] = ccdf.Lookup(Record::Int(i));
  RegressionGrid grid{[&v](std::int64_t x) { return v[x]; },
                      [&h](std::int64_t y) { return h[y]; }, n};
  return FitDegreeSequence(grid);
}

absl::StatusOr<SynthesisResult> Synthesize(
    const std::vector<std::shared_ptr<Measurement>>& measurements,
    const SynthesisConfig& config) {
  std::shared_ptr<Measurement> degseq, ccdf, nodes;
  std::vector<std::pair<GraphQuery, std::shared_ptr<Measurement>>> targets;
  std::optional<EdgePolicy> policy;
  for (const auto& m : measurements) {
    absl::StatusOr<GraphQuery> q = ParseGraphQuery(m->query_id());
    if (!q.ok()) return q.status();
    switch (*q) {
      case GraphQuery::kDegseq: degseq = m; break;
      case GraphQuery::kCcdf: ccdf = m; break;
      case GraphQuery::kNodeCount: nodes = m; break;
      default: targets.emplace_back(*q, m); break;
    }
    if (IsDegreeQuery(*q)) continue;
    std::optional<std::string> p = m->Attribute(kPolicyAttribute);
    if (!p.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat(m->query_id(), " measurement has no policy"));
    }
    absl::StatusOr<EdgePolicy> parsed = ParseEdgePolicy(*p);
    if (!parsed.ok()) return parsed.status();
    if (policy.has_value() && *policy != *parsed) {
      return absl::InvalidArgumentError(
          "target measurements use different edge policies");
    }
    policy = *parsed;
  }
  if (!degseq || !ccdf || !nodes) {
    return absl::InvalidArgumentError(
        "synthesis needs degseq, ccdf and nodes measurements");
  }

  SynthesisResult result;
  absl::StatusOr<std::vector<std::int64_t>> fitted =
      FitDegrees(*degseq, *ccdf, *nodes);
  if (!fitted.ok()) return fitted.status();
  result.fitted_degrees = *std::move(fitted);
  std::mt19937_64 graph_rng(config.graph_seed);
  result.seed = MakeSeedGraph(result.fitted_degrees, graph_rng);

  absl::StatusOr<SyntheticState> state = SyntheticState::Create(
      result.seed.edges, policy.value_or(EdgePolicy::kRawUndirected));
  if (!state.ok()) return state.status();
  for (auto& [query, m] : targets) {
    std::int64_t bucket = 1;
    if (auto b = m->Attribute(kBucketAttribute)) {
      if (!absl::SimpleAtoi(*b, &bucket) || bucket < 1) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad bucket attribute ", *b));
      }
    }
    absl::Status s = state->AddTarget(query, bucket, m);
    if (!s.ok()) return s;
  }
  std::mt19937_64 walk_rng(config.walk_seed);
  absl::StatusOr<McmcStats> stats =
      RunMcmc(*state, config.score,
              {.steps = config.steps,
               .trace_interval = config.trace_interval,
               .observer = config.observer},
              walk_rng, &result.trace);
  if (!stats.ok()) return stats.status();
  result.stats = *stats;
  result.edges = state->graph().Sorted();
  return result;
}

}  // namespace wpinq

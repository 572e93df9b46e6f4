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

#include "wpinq/graph/edges.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"

namespace wpinq {

absl::StatusOr<EdgePolicy> ParseEdgePolicy(std::string_view text) {
  if (text == "raw-undirected") return EdgePolicy::kRawUndirected;
  if (text == "symmetric-directed") return EdgePolicy::kSymmetricDirected;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown symmetrization policy '", std::string(text), "'"));
}

const char* EdgePolicyName(EdgePolicy policy) {
  return policy == EdgePolicy::kRawUndirected ? "raw-undirected"
                                              : "symmetric-directed";
}

absl::StatusOr<std::vector<Edge>> ParseEdgeList(std::string_view text) {
  std::vector<Edge> edges;
  int line_no = 0;
  for (absl::string_view line :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_no;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar(" \t,"), absl::SkipEmpty());
    NodeId src = 0;
    NodeId dst = 0;
    if (fields.size() != 2 || !absl::SimpleAtoi(fields[0], &src) ||
        !absl::SimpleAtoi(fields[1], &dst)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "edge list line ", line_no, ": expected two node ids, got '", line,
          "'"));
    }
    edges.emplace_back(src, dst);
  }
  return edges;
}

absl::StatusOr<std::vector<Edge>> ReadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseEdgeList(buffer.str());
}

std::string FormatEdgeList(const std::vector<Edge>& edges) {
  std::string out;
  for (const auto& [a, b] : edges) absl::StrAppend(&out, a, " ", b, "\n");
  return out;
}

std::vector<Edge> SimpleUndirected(const std::vector<Edge>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a == b) continue;
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WeightedDataset EdgeDataset(const std::vector<Edge>& undirected,
                            EdgePolicy policy) {
  WeightedDataset out;
  for (const auto& [a, b] : undirected) {
    out.Add(Record::Edge(a, b), 1.0);
    if (policy == EdgePolicy::kSymmetricDirected) out.Add(Record::Edge(b, a), 1.0);
  }
  return out;
}

absl::btree_map<NodeId, std::int64_t> Degrees(
    const std::vector<Edge>& undirected) {
  absl::btree_map<NodeId, std::int64_t> degree;
  for (const auto& [a, b] : undirected) {
    ++degree[a];
    ++degree[b];
  }
  return degree;
}

std::vector<std::int64_t> DegreeSequence(const std::vector<Edge>& undirected) {
  std::vector<std::int64_t> seq;
  for (const auto& [node, d] : Degrees(undirected)) seq.push_back(d);
  std::sort(seq.begin(), seq.end(), std::greater<>());
  return seq;
}

std::int64_t SumSquaredDegrees(const std::vector<Edge>& undirected) {
  std::int64_t total = 0;
  for (const auto& [node, d] : Degrees(undirected)) total += d * d;
  return total;
}

}  // namespace wpinq

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

#include "wpinq/privacy/measurement.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "wpinq/core/real_format.h"

namespace wpinq {
namespace {

absl::StatusOr<double> ParseDouble(std::string_view text) {
  std::string copy(text);
  char* end = nullptr;
  double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(v)) {
    return absl::InvalidArgumentError(absl::StrCat("bad number '", std::string(text), "'"));
  }
  return v;
}

absl::StatusOr<std::uint64_t> ParseUint(std::string_view text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return absl::InvalidArgumentError(absl::StrCat("bad integer '", std::string(text), "'"));
  }
  return v;
}

}  // namespace

absl::StatusOr<Measurement> Measurement::Take(std::string query_id,
                                              WeightedDataset dataset,
                                              double epsilon,
                                              NoiseSource noise) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  Measurement m;
  m.query_id_ = std::move(query_id);
  m.epsilon_ = epsilon;
  m.noise_ = std::move(noise);
  m.dataset_ = std::make_unique<const WeightedDataset>(std::move(dataset));
  return m;
}

double Measurement::Lookup(const Record& record) {
  std::lock_guard<std::mutex> lock(*mu_);
  if (auto it = observed_.find(record); it != observed_.end()) return it->second;
  if (auto it = memo_.find(record); it != memo_.end()) return it->second;
  // Scale 1/epsilon is validated at construction, so sampling cannot fail.
  double noise = *LaplaceSample(1.0 / epsilon_, noise_);
  if (dataset_ != nullptr) {
    double value = std::max(0.0, dataset_->Weight(record)) + noise;
    observed_.emplace(record, value);
    return value;
  }
  memo_.emplace(record, noise);
  return noise;
}

std::optional<double> Measurement::Peek(const Record& record) const {
  std::lock_guard<std::mutex> lock(*mu_);
  if (auto it = observed_.find(record); it != observed_.end()) return it->second;
  if (auto it = memo_.find(record); it != memo_.end()) return it->second;
  return std::nullopt;
}

void Measurement::Detach(std::span<const Record> domain) {
  std::vector<Record> sorted(domain.begin(), domain.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const Record& r : sorted) Lookup(r);
  std::lock_guard<std::mutex> lock(*mu_);
  dataset_.reset();
}

void Measurement::SetAttribute(std::string key, std::string value) {
  attributes_[std::move(key)] = std::move(value);
}

std::optional<std::string> Measurement::Attribute(std::string_view key) const {
  auto it = attributes_.find(std::string(key));
  if (it == attributes_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<std::string> Measurement::Serialize() const {
  if (!detached()) {
    return absl::FailedPreconditionError(
        "measurement still holds its dataset; detach it before serializing");
  }
  std::lock_guard<std::mutex> lock(*mu_);
  std::string out = "# wpinq-measurement 1\n";
  absl::StrAppend(&out, "# query_id ", query_id_, "\n");
  absl::StrAppend(&out, "# epsilon ", FormatReal(epsilon_), "\n");
  absl::StrAppend(&out, "# seed ", noise_.seed(), "\n");
  absl::StrAppend(&out, "# draws ", noise_.draws(), "\n");
  absl::StrAppend(&out, "# zero_noise ", noise_.zero_noise() ? 1 : 0, "\n");
  for (const auto& [key, value] : attributes_) {
    absl::StrAppend(&out, "# attr ", key, " ", value, "\n");
  }
  absl::StrAppend(&out, "# observed\n");
  for (const auto& [record, value] : observed_) {
    absl::StrAppend(&out, record.ToText(), "\t", FormatReal(value), "\n");
  }
  absl::StrAppend(&out, "# memo\n");
  for (const auto& [record, value] : memo_) {
    absl::StrAppend(&out, record.ToText(), "\t", FormatReal(value), "\n");
  }
  return out;
}

absl::StatusOr<Measurement> Measurement::Parse(std::string_view text) {
  Measurement m;
  std::uint64_t seed = 0;
  std::uint64_t draws = 0;
  bool zero_noise = false;
  bool have_epsilon = false;
  ValueMap* section = nullptr;
  int line_no = 0;
  for (absl::string_view line_view : absl::StrSplit(
           absl::string_view(text.data(), text.size()), '\n')) {
    ++line_no;
    std::string_view line(line_view.data(), line_view.size());
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": ", why));
    };
    if (line.front() == '#') {
      std::vector<std::string> parts = absl::StrSplit(
          absl::string_view(line_view.substr(1)), ' ', absl::SkipEmpty());
      if (parts.empty()) continue;
      const std::string& key = parts[0];
      if (key == "observed" && parts.size() == 1) {
        section = &m.observed_;
      } else if (key == "memo" && parts.size() == 1) {
        section = &m.memo_;
      } else if (key == "wpinq-measurement") {
        if (parts.size() != 2 || parts[1] != "1") return fail("unknown version");
      } else if (key == "query_id" && parts.size() == 2) {
        m.query_id_ = parts[1];
      } else if (key == "epsilon" && parts.size() == 2) {
        absl::StatusOr<double> eps = ParseDouble(parts[1]);
        if (!eps.ok() || !(*eps > 0.0)) return fail("bad epsilon");
        m.epsilon_ = *eps;
        have_epsilon = true;
      } else if (key == "seed" && parts.size() == 2) {
        absl::StatusOr<std::uint64_t> v = ParseUint(parts[1]);
        if (!v.ok()) return fail("bad seed");
        seed = *v;
      } else if (key == "draws" && parts.size() == 2) {
        absl::StatusOr<std::uint64_t> v = ParseUint(parts[1]);
        if (!v.ok()) return fail("bad draw count");
        draws = *v;
      } else if (key == "zero_noise" && parts.size() == 2) {
        zero_noise = parts[1] == "1";
      } else if (key == "attr" && parts.size() == 3) {
        m.attributes_[parts[1]] = parts[2];
      } else {
        return fail(absl::StrCat("unknown header '", key, "'"));
      }
      continue;
    }
    if (section == nullptr) return fail("value line before any section");
    std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos) return fail("missing tab");
    absl::StatusOr<Record> record = Record::Parse(line.substr(0, tab));
    if (!record.ok()) return fail(std::string(record.status().message()));
    absl::StatusOr<double> value = ParseDouble(line.substr(tab + 1));
    if (!value.ok()) return fail(std::string(value.status().message()));
    if (!section->emplace(*std::move(record), *value).second) {
      return fail("duplicate record");
    }
  }
  if (!have_epsilon) return absl::InvalidArgumentError("missing epsilon");
  m.noise_ = zero_noise ? NoiseSource::ZeroNoise()
                        : NoiseSource::Resume(seed, draws);
  return m;
}

}  // namespace wpinq

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

#ifndef WPINQ_PRIVACY_MEASUREMENT_H_
#define WPINQ_PRIVACY_MEASUREMENT_H_

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/btree_map.h"
#include "absl/status/statusor.h"
#include "wpinq/core/record.h"
#include "wpinq/core/weighted_dataset.h"
#include "wpinq/privacy/noise.h"

namespace wpinq {

// The result of NoisyCount(A, epsilon): a memoized map from records to
// A(x) + Laplace(1/epsilon).
//
// While the measured dataset is held, a lookup of a new record adds fresh
// noise to its true weight. Detach() materializes a public record domain and
// drops the dataset; afterwards new records get noise around zero. Either
// way the first value returned for a record is returned forever.
//
// Negative weights are clamped to zero before noise is added.
//
// Lookup() is internally synchronized.
class Measurement {
 public:
  using ValueMap = absl::btree_map<Record, double>;

  // Holds a copy of `dataset`. Nothing is sampled yet.
  static absl::StatusOr<Measurement> Take(std::string query_id,
                                          WeightedDataset dataset,
                                          double epsilon, NoiseSource noise);

  Measurement(Measurement&&) = default;
  Measurement& operator=(Measurement&&) = default;

  double Lookup(const Record& record);
  // The memoized value, if the record was looked up before.
  std::optional<double> Peek(const Record& record) const;

  // Looks up every record of `domain` in canonical order, then releases the
  // dataset. Idempotent once detached (further records are still looked up).
  void Detach(std::span<const Record> domain);
  bool detached() const { return dataset_ == nullptr; }

  const std::string& query_id() const { return query_id_; }
  double epsilon() const { return epsilon_; }
  const NoiseSource& noise() const { return noise_; }

  // Values drawn while the dataset was held.
  const ValueMap& observed() const { return observed_; }
  // Values drawn after detaching: pure noise around zero.
  const ValueMap& memo() const { return memo_; }

  // Free-form key/value metadata carried through serialization. Keys and
  // values must not contain whitespace.
  void SetAttribute(std::string key, std::string value);
  std::optional<std::string> Attribute(std::string_view key) const;

  // Line-oriented text: `# key value` header lines, then `# observed` and
  // `# memo` sections of `<record>\t<value>` lines. Values use 17 significant
  // digits, so Parse(Serialize()) is bit-exact. Only detached measurements
  // can be serialized.
  absl::StatusOr<std::string> Serialize() const;
  // The result is detached and resumes the noise stream where it stopped.
  static absl::StatusOr<Measurement> Parse(std::string_view text);

 private:
  Measurement() : mu_(std::make_unique<std::mutex>()) {}

  std::string query_id_;
  double epsilon_ = 0.0;
  NoiseSource noise_ = NoiseSource::ZeroNoise();
  std::unique_ptr<const WeightedDataset> dataset_;
  ValueMap observed_;
  ValueMap memo_;
  absl::btree_map<std::string, std::string> attributes_;
  std::unique_ptr<std::mutex> mu_;
};

}  // namespace wpinq

#endif  // WPINQ_PRIVACY_MEASUREMENT_H_

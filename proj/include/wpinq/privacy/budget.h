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

#ifndef WPINQ_PRIVACY_BUDGET_H_
#define WPINQ_PRIVACY_BUDGET_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/container/btree_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "wpinq/incremental/plan.h"

namespace wpinq {

// Sequential-composition ledger. Each protected input has a cap; a plan that
// reads an input k times at epsilon costs k * epsilon against it.
class BudgetAccount {
 public:
  struct Charge {
    std::string label;
    int uses = 0;
    double epsilon = 0.0;
    double cost() const { return uses * epsilon; }
  };

  void SetCap(const std::string& input, double cap);
  bool HasInput(std::string_view input) const;
  double cap(std::string_view input) const;
  double spent(std::string_view input) const;
  std::vector<Charge> charges(std::string_view input) const;

  // Charges every declared input of `plan` by its use count times epsilon.
  // All-or-nothing: if any input lacks a cap or would exceed it, nothing is
  // recorded and ResourceExhausted (or NotFound) is returned.
  absl::Status ChargePlan(const QueryPlan& plan, double epsilon,
                          std::string_view label);
  absl::Status ChargeUses(const std::string& input, int uses, double epsilon,
                          std::string_view label);

  // Text form, one `cap` or `charge` line per entry.
  std::string Serialize() const;
  static absl::StatusOr<BudgetAccount> Parse(std::string_view text);

 private:
  struct Entry {
    double cap = 0.0;
    std::vector<Charge> charges;
  };
  // Would-be spent after adding `extra`; admitted up to a 1e-9 relative
  // rounding allowance.
  static bool Admits(const Entry& entry, double extra);
  static double Spent(const Entry& entry);

  absl::btree_map<std::string, Entry, std::less<>> entries_;
};

}  // namespace wpinq

#endif  // WPINQ_PRIVACY_BUDGET_H_

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

#include "wpinq/privacy/budget.h"

#include <cmath>
#include <cstdlib>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "wpinq/core/real_format.h"

namespace wpinq {
namespace {

bool ParseDouble(const std::string& text, double* out) {
  char* end = nullptr;
  *out = std::strtod(text.c_str(), &end);
  return !text.empty() && end == text.c_str() + text.size() &&
         std::isfinite(*out);
}

}  // namespace

void BudgetAccount::SetCap(const std::string& input, double cap) {
  entries_[input].cap = cap;
}

bool BudgetAccount::HasInput(std::string_view input) const {
  return entries_.find(input) != entries_.end();
}

double BudgetAccount::cap(std::string_view input) const {
  auto it = entries_.find(input);
  return it == entries_.end() ? 0.0 : it->second.cap;
}

double BudgetAccount::spent(std::string_view input) const {
  auto it = entries_.find(input);
  return it == entries_.end() ? 0.0 : Spent(it->second);
}

std::vector<BudgetAccount::Charge> BudgetAccount::charges(
    std::string_view input) const {
  auto it = entries_.find(input);
  if (it == entries_.end()) return {};
  return it->second.charges;
}

double BudgetAccount::Spent(const Entry& entry) {
  double total = 0.0;
  for (const Charge& c : entry.charges) total += c.cost();
  return total;
}

bool BudgetAccount::Admits(const Entry& entry, double extra) {
  double total = Spent(entry) + extra;
  return total <= entry.cap * (1.0 + 1e-9) + 1e-12;
}

absl::Status BudgetAccount::ChargePlan(const QueryPlan& plan, double epsilon,
                                       std::string_view label) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  std::vector<std::pair<std::string, int>> uses;
  for (const std::string& input : plan.declared_inputs()) {
    absl::StatusOr<int> k = CountUses(plan, input);
    if (!k.ok()) return k.status();
    if (*k == 0) continue;
    auto it = entries_.find(input);
    if (it == entries_.end()) {
      return absl::NotFoundError(
          absl::StrCat("no budget registered for input '", input, "'"));
    }
    if (!Admits(it->second, *k * epsilon)) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "charge of ", *k, " x ", epsilon, " = ", *k * epsilon,
          " against '", input, "' exceeds the remaining budget (spent ",
          Spent(it->second), " of ", it->second.cap, ")"));
    }
    uses.emplace_back(input, *k);
  }
  for (const auto& [input, k] : uses) {
    entries_[input].charges.push_back({std::string(label), k, epsilon});
  }
  return absl::OkStatus();
}

absl::Status BudgetAccount::ChargeUses(const std::string& input, int uses,
                                       double epsilon, std::string_view label) {
  if (!(epsilon > 0.0) || uses < 0) {
    return absl::InvalidArgumentError("bad charge");
  }
  auto it = entries_.find(input);
  if (it == entries_.end()) {
    return absl::NotFoundError(
        absl::StrCat("no budget registered for input '", input, "'"));
  }
  if (!Admits(it->second, uses * epsilon)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "charge of ", uses * epsilon, " against '", input,
        "' exceeds the remaining budget"));
  }
  it->second.charges.push_back({std::string(label), uses, epsilon});
  return absl::OkStatus();
}

std::string BudgetAccount::Serialize() const {
  std::string out;
  for (const auto& [input, entry] : entries_) {
    absl::StrAppend(&out, "cap\t", input, "\t", FormatReal(entry.cap), "\n");
    for (const Charge& c : entry.charges) {
      absl::StrAppend(&out, "charge\t", input, "\t", c.label, "\t", c.uses,
                      "\t", FormatReal(c.epsilon), "\n");
    }
  }
  return out;
}

absl::StatusOr<BudgetAccount> BudgetAccount::Parse(std::string_view text) {
  BudgetAccount account;
  int line_no = 0;
  for (absl::string_view line :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> f = absl::StrSplit(line, '\t');
    auto fail = [&] {
      return absl::InvalidArgumentError(
          absl::StrCat("budget ledger line ", line_no, " is malformed"));
    };
    double number = 0.0;
    if (f[0] == "cap" && f.size() == 3) {
      if (!ParseDouble(f[2], &number)) return fail();
      account.entries_[f[1]].cap = number;
    } else if (f[0] == "charge" && f.size() == 5) {
      int uses = 0;
      if (!absl::SimpleAtoi(f[3], &uses) || !ParseDouble(f[4], &number)) {
        return fail();
      }
      account.entries_[f[1]].charges.push_back({f[2], uses, number});
    } else {
      return fail();
    }
  }
  return account;
}

}  // namespace wpinq

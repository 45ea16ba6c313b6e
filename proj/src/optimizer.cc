// Copyright 2026 The fwconform Authors
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

#include "fwconform/optimizer.h"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"

namespace fwconform {
namespace {

constexpr char kInfeasible[] = "infeasible";

// Partial assignment over the first k requirements.
struct State {
  int64_t cost = 0;
  int64_t time = 0;
  std::vector<const ProcedureVariant*> picks;
};

bool IdsLess(const std::vector<const ProcedureVariant*>& a,
             const std::vector<const ProcedureVariant*>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const ProcedureVariant* x, const ProcedureVariant* y) {
        return x->variant_id < y->variant_id;
      });
}

// Strict objective order: time, then cost, then variant ids.
bool Better(const State& a, const State& b) {
  if (a.time != b.time) return a.time < b.time;
  if (a.cost != b.cost) return a.cost < b.cost;
  return IdsLess(a.picks, b.picks);
}

CampaignPlan ToPlan(const State& s) {
  CampaignPlan plan;
  for (const ProcedureVariant* v : s.picks) plan.chosen[v->requirement] = *v;
  plan.total_time = s.time;
  plan.total_cost = s.cost;
  return plan;
}

absl::Status CheckInputs(const VariantTable& table, int64_t budget) {
  if (budget < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("budget must be nonnegative, got ", budget));
  }
  return ValidateVariantTable(table);
}

absl::Status InfeasibleError(const VariantTable& table, int64_t budget) {
  int64_t cheapest = 0;
  for (const auto& [req, variants] : table) {
    int64_t c = std::numeric_limits<int64_t>::max();
    for (const ProcedureVariant& v : variants) c = std::min(c, v.cost);
    cheapest += c;
  }
  return absl::FailedPreconditionError(
      absl::StrCat(kInfeasible, ": cheapest full assignment costs ", cheapest,
                   ", budget is ", budget));
}

// Guards against overflow in the sums; values are desk-scale.
constexpr int64_t kMaxUnit = int64_t{1} << 40;

}  // namespace

absl::Status ValidateVariantTable(const VariantTable& table) {
  for (const auto& [req, variants] : table) {
    if (variants.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("requirement ", req, " has no procedure variant"));
    }
    std::set<std::string> ids;
    for (const ProcedureVariant& v : variants) {
      if (v.requirement != req) {
        return absl::InvalidArgumentError(
            absl::StrCat("variant ", v.variant_id, " of ", v.requirement,
                         " listed under ", req));
      }
      if (v.time < 0 || v.cost < 0 || v.time > kMaxUnit || v.cost > kMaxUnit) {
        return absl::InvalidArgumentError(
            absl::StrCat("variant ", req, "/", v.variant_id,
                         " has time or cost out of range"));
      }
      if (!ids.insert(v.variant_id).second) {
        return absl::InvalidArgumentError(absl::StrCat(
            "duplicate variant id ", v.variant_id, " for ", req));
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<CampaignPlan> OptimizePlan(const VariantTable& table,
                                          int64_t budget) {
  if (absl::Status s = CheckInputs(table, budget); !s.ok()) return s;

  // Pareto front over (cost, time), sorted by cost with strictly
  // decreasing time. A state dominated on both sums is never part of an
  // optimum; on equal sums the smaller id prefix wins every completion.
  std::vector<State> front = {State{}};
  for (const auto& [req, variants] : table) {
    std::vector<State> next;
    next.reserve(front.size() * variants.size());
    for (const State& s : front) {
      for (const ProcedureVariant& v : variants) {
        if (s.cost + v.cost > budget) continue;
        State t = s;
        t.cost += v.cost;
        t.time += v.time;
        t.picks.push_back(&v);
        next.push_back(std::move(t));
      }
    }
    std::sort(next.begin(), next.end(), [](const State& a, const State& b) {
      if (a.cost != b.cost) return a.cost < b.cost;
      if (a.time != b.time) return a.time < b.time;
      return IdsLess(a.picks, b.picks);
    });
    front.clear();
    for (State& s : next) {
      if (front.empty() || s.time < front.back().time) {
        front.push_back(std::move(s));
      }
    }
    if (front.empty()) return InfeasibleError(table, budget);
  }
  // Times decrease along the front, so the last state has minimal time and,
  // among equal times, was the first (cheapest, smallest ids) admitted.
  return ToPlan(front.back());
}

absl::StatusOr<CampaignPlan> BruteForcePlan(const VariantTable& table,
                                            int64_t budget) {
  if (absl::Status s = CheckInputs(table, budget); !s.ok()) return s;
  uint64_t combos = 1;
  for (const auto& [req, variants] : table) {
    combos *= variants.size();
    if (combos > kBruteForceLimit) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "too large: more than ", kBruteForceLimit, " assignments"));
    }
  }

  std::vector<const std::vector<ProcedureVariant>*> groups;
  for (const auto& [req, variants] : table) groups.push_back(&variants);

  std::vector<size_t> digits(groups.size(), 0);
  std::optional<State> best;
  for (uint64_t n = 0; n < combos; ++n) {
    State s;
    for (size_t g = 0; g < groups.size(); ++g) {
      const ProcedureVariant& v = (*groups[g])[digits[g]];
      s.cost += v.cost;
      s.time += v.time;
      s.picks.push_back(&v);
    }
    if (s.cost <= budget && (!best || Better(s, *best))) best = std::move(s);
    for (size_t g = 0; g < groups.size(); ++g) {
      if (++digits[g] < groups[g]->size()) break;
      digits[g] = 0;
    }
  }
  if (!best) return InfeasibleError(table, budget);
  return ToPlan(*best);
}

bool IsInfeasible(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition &&
         absl::StartsWith(std::string(status.message()),
                          std::string(kInfeasible));
}

}  // namespace fwconform

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

#ifndef FWCONFORM_OPTIMIZER_H_
#define FWCONFORM_OPTIMIZER_H_

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace fwconform {

// One way of carrying out the procedure of a requirement, e.g. manual or
// scripted.
struct ProcedureVariant {
  std::string requirement;
  std::string variant_id;
  int64_t time = 0;
  int64_t cost = 0;

  friend bool operator==(const ProcedureVariant&,
                         const ProcedureVariant&) = default;
};

// requirement id -> candidate variants.
using VariantTable = std::map<std::string, std::vector<ProcedureVariant>>;

struct CampaignPlan {
  std::map<std::string, ProcedureVariant> chosen;
  int64_t total_time = 0;
  int64_t total_cost = 0;

  friend bool operator==(const CampaignPlan&, const CampaignPlan&) = default;
};

inline constexpr int64_t kUnlimitedBudget = std::numeric_limits<int64_t>::max();
inline constexpr uint64_t kBruteForceLimit = 1'000'000;

// InvalidArgument on an empty variant list, negative time or cost, a
// variant filed under the wrong requirement, or duplicate variant ids.
absl::Status ValidateVariantTable(const VariantTable& table);

// One variant per requirement minimizing total time subject to
// total_cost <= budget. Ties go to lower total cost, then to the
// lexicographically smaller sequence of variant ids in requirement order.
// Fails with FailedPrecondition ("infeasible") when no assignment fits the
// budget and InvalidArgument on a malformed table or negative budget.
absl::StatusOr<CampaignPlan> OptimizePlan(const VariantTable& table,
                                          int64_t budget);

// Exhaustive reference with the same objective. Fails with
// ResourceExhausted ("too large") beyond kBruteForceLimit assignments.
absl::StatusOr<CampaignPlan> BruteForcePlan(const VariantTable& table,
                                            int64_t budget);

bool IsInfeasible(const absl::Status& status);

}  // namespace fwconform

#endif  // FWCONFORM_OPTIMIZER_H_

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

#ifndef FWCONFORM_CAMPAIGN_H_
#define FWCONFORM_CAMPAIGN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fwconform/fault.h"
#include "fwconform/formal.h"
#include "fwconform/optimizer.h"
#include "fwconform/scenario.h"
#include "fwconform/verdict.h"

namespace fwconform {

inline constexpr char kToolName[] = "fwconform";
inline constexpr char kToolVersion[] = "1.0.0";

struct ProcedureRecord {
  TestProcedure procedure;
  // Variant the plan selected for this procedure.
  std::string variant;
  Evidence evidence;
  ProcedureOutcome outcome;

  friend bool operator==(const ProcedureRecord&,
                         const ProcedureRecord&) = default;
};

struct ReportMetadata {
  std::string tool = kToolName;
  std::string tool_version = kToolVersion;
  std::string scenario;
  uint64_t seed = 0;
  std::vector<std::string> faults;
  // The only field allowed to differ between otherwise identical runs.
  std::string generated_at;

  friend bool operator==(const ReportMetadata&,
                         const ReportMetadata&) = default;
};

struct Report {
  ReportMetadata metadata;
  std::string profile;
  int64_t budget = kUnlimitedBudget;
  CampaignPlan plan;
  std::vector<ClaimBit> claims;
  std::vector<ProcedureRecord> procedures;
  CampaignVerdict verdict;

  friend bool operator==(const Report&, const Report&) = default;
};

struct CampaignOptions {
  std::optional<uint64_t> seed;
  // Injected on top of the scenario's own faults.
  std::vector<FaultKind> faults;
  bool parallel = true;
  // Empty: current UTC time.
  std::string generated_at;
};

// Planning, testing and analysis for every requirement of the scenario.
// Each procedure runs on its own testbench and firewall instance. Fails
// with InvalidArgument on an invalid scenario or inapplicable fault;
// procedure failures carry the procedure id.
absl::StatusOr<Report> RunCampaign(const Scenario& scenario,
                                   const CampaignOptions& options = {});

// Recomputes every outcome from its embedded evidence and the verdict from
// the outcomes. DataLoss names the first mismatch.
absl::Status AuditReport(const Report& report);

// ISO 8601 UTC, second precision.
std::string CurrentTimestamp();

}  // namespace fwconform

#endif  // FWCONFORM_CAMPAIGN_H_

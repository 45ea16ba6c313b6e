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

#include "fwconform/campaign.h"

#include <chrono>
#include <ctime>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "fwconform/testbench.h"

namespace fwconform {
namespace {

absl::Status WithContext(const absl::Status& s, const std::string& context) {
  return absl::Status(s.code(), absl::StrCat(context, ": ", s.message()));
}

absl::StatusOr<Evidence> Execute(const Scenario& sc,
                                 const std::vector<FaultKind>& faults,
                                 const TestProcedure& proc) {
  absl::StatusOr<Firewall> fw = Firewall::Create(MakeFirewallConfig(sc));
  if (!fw.ok()) return fw.status();
  for (const FaultKind& fault : faults) {
    fw = fw->InjectFault(fault);
    if (!fw.ok()) return fw.status();
  }
  absl::StatusOr<Testbench> bench =
      Testbench::Create(sc.topology, *std::move(fw));
  if (!bench.ok()) return bench.status();

  switch (proc.kind) {
    case ProcedureKind::kFilter: {
      std::vector<TrafficVariant> traffic = sc.traffic;
      if (traffic.empty()) traffic.push_back(TrafficVariant{});
      absl::StatusOr<FilterEvidence> ev =
          RunFilterProcedure(*bench, sc.rules, proc.level, traffic);
      if (!ev.ok()) return ev.status();
      return Evidence(*std::move(ev));
    }
    case ProcedureKind::kAuth: {
      absl::StatusOr<AuthEvidence> ev = RunAuthProcedure(
          *bench, sc.accounts, sc.attempts, proc.auth_mode);
      if (!ev.ok()) return ev.status();
      return Evidence(*std::move(ev));
    }
    case ProcedureKind::kIntegrity: {
      absl::StatusOr<IntegrityEvidence> ev =
          RunIntegrityProcedure(*bench, sc.mutations);
      if (!ev.ok()) return ev.status();
      return Evidence(*std::move(ev));
    }
  }
  return absl::InternalError("unknown procedure kind");
}

absl::StatusOr<ProcedureRecord> RunOne(const Scenario& sc,
                                       const std::vector<FaultKind>& faults,
                                       const TestProcedure& proc,
                                       std::string variant) {
  absl::StatusOr<Evidence> ev = Execute(sc, faults, proc);
  if (!ev.ok()) return WithContext(ev.status(), proc.id);
  absl::StatusOr<ProcedureOutcome> outcome =
      EvaluateEvidence(*ev, proc.id, proc.source_requirement);
  if (!outcome.ok()) return WithContext(outcome.status(), proc.id);
  return ProcedureRecord{proc, std::move(variant), *std::move(ev),
                         *std::move(outcome)};
}

}  // namespace

std::string CurrentTimestamp() {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  return absl::StrFormat("%04d-%02d-%02dT%02d:%02d:%02dZ", utc.tm_year + 1900,
                         utc.tm_mon + 1, utc.tm_mday, utc.tm_hour, utc.tm_min,
                         utc.tm_sec);
}

absl::StatusOr<Report> RunCampaign(const Scenario& scenario,
                                   const CampaignOptions& options) {
  Scenario sc = scenario;
  if (options.seed) sc.seed = *options.seed;
  sc.faults.insert(sc.faults.end(), options.faults.begin(),
                   options.faults.end());
  if (std::vector<ScenarioError> errors = ValidateScenario(sc);
      !errors.empty()) {
    std::vector<std::string> parts;
    for (const ScenarioError& e : errors) parts.push_back(e.ToString());
    return absl::InvalidArgumentError(
        absl::StrCat("invalid scenario: ", absl::StrJoin(parts, "; ")));
  }

  Report report;
  report.metadata.scenario = sc.name;
  report.metadata.seed = sc.seed;
  for (const FaultKind& f : sc.faults) {
    report.metadata.faults.push_back(FaultToString(f));
  }
  report.metadata.generated_at =
      options.generated_at.empty() ? CurrentTimestamp() : options.generated_at;
  report.profile = sc.profile.id;
  report.budget = sc.budget;

  // Planning.
  absl::StatusOr<TestingTechnique> technique =
      TestingTechnique::Create(sc.profile, sc.requirements);
  if (!technique.ok()) return technique.status();
  report.claims = technique->Claims();
  absl::StatusOr<CampaignPlan> plan =
      OptimizePlan(CampaignVariants(sc), sc.budget);
  if (!plan.ok()) return WithContext(plan.status(), "planning");
  report.plan = *std::move(plan);
  absl::StatusOr<std::vector<TestProcedure>> procs = technique->DevelopAll();
  if (!procs.ok()) return procs.status();

  // Testing. One bench per procedure; results joined in catalog order.
  std::vector<absl::StatusOr<ProcedureRecord>> results;
  if (options.parallel) {
    std::vector<std::future<absl::StatusOr<ProcedureRecord>>> futures;
    for (const TestProcedure& proc : *procs) {
      std::string variant =
          report.plan.chosen.at(proc.source_requirement).variant_id;
      futures.push_back(std::async(std::launch::async, RunOne, std::cref(sc),
                                   std::cref(sc.faults), std::cref(proc),
                                   std::move(variant)));
    }
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (const TestProcedure& proc : *procs) {
      results.push_back(RunOne(
          sc, sc.faults, proc,
          report.plan.chosen.at(proc.source_requirement).variant_id));
    }
  }

  // Analysis.
  std::vector<ProcedureOutcome> outcomes;
  for (absl::StatusOr<ProcedureRecord>& r : results) {
    if (!r.ok()) return r.status();
    outcomes.push_back(r->outcome);
    report.procedures.push_back(*std::move(r));
  }
  absl::StatusOr<CampaignVerdict> verdict =
      AggregateVerdict(report.claims, outcomes);
  if (!verdict.ok()) return verdict.status();
  report.verdict = *std::move(verdict);
  return report;
}

absl::Status AuditReport(const Report& report) {
  std::vector<ProcedureOutcome> outcomes;
  for (const ProcedureRecord& rec : report.procedures) {
    absl::StatusOr<ProcedureOutcome> again =
        EvaluateEvidence(rec.evidence, rec.outcome.procedure,
                         rec.outcome.requirement);
    if (!again.ok()) return WithContext(again.status(), rec.procedure.id);
    if (*again != rec.outcome) {
      return absl::DataLossError(absl::StrCat(
          rec.procedure.id, ": recorded outcome (F_C=", rec.outcome.f_c,
          ") does not follow from the evidence (F_C=", again->f_c, ")"));
    }
    outcomes.push_back(*std::move(again));
  }
  absl::StatusOr<CampaignVerdict> verdict =
      AggregateVerdict(report.claims, outcomes);
  if (!verdict.ok()) return verdict.status();
  if (*verdict != report.verdict) {
    return absl::DataLossError(absl::StrCat(
        "recorded verdict (sum ", report.verdict.sum, ", conform ",
        report.verdict.conform, ") does not follow from the outcomes (sum ",
        verdict->sum, ", conform ", verdict->conform, ")"));
  }
  return absl::OkStatus();
}

}  // namespace fwconform

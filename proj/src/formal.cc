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

#include "fwconform/formal.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"

namespace fwconform {
namespace {

std::vector<ProcedureStep> FilterPlan() {
  return {
      {1, "configure allow/deny screening rules on the firewall"},
      {2, "start capture on the external and internal segments"},
      {3, "send one tagged packet per external->internal address pair"},
      {4, "stop capture and collect PACKET_IN / PACKET_OUT"},
      {5, "export the firewall journal (JOUR0 / JOUR1)"},
  };
}

std::vector<ProcedureStep> AuthPlan(AuthMode mode) {
  std::vector<ProcedureStep> plan = {
      {1, "enable administrator authentication and register ADM"},
      {2, "start capture on the internal segment"},
      {3, "submit registered/unregistered id x valid/invalid password tries"},
      {4, "send allowed and denied probe packets across the firewall"},
      {5, "stop capture and export the firewall journal"},
      {6, "search captured payloads for identifiers and passwords"},
  };
  if (mode == AuthMode::kLocal) {
    std::erase_if(plan, [](const ProcedureStep& s) {
      return s.number == 2 || s.number == 5;
    });
  }
  return plan;
}

std::vector<ProcedureStep> IntegrityPlan() {
  return {
      {1, "activate integrity control and enumerate FILE"},
      {2, "modify firewall files, producing FILE_delta"},
      {3, "trigger the firewall integrity check"},
      {4, "collect the firewall response F_INT per file"},
  };
}

absl::Status Unsupported(const FirewallProfile& profile,
                         const Requirement& req, std::string_view missing) {
  return absl::FailedPreconditionError(absl::StrCat(
      "unsupported requirement ", req.id, " (",
      std::string(RequirementKindName(req.kind)), ") for profile ", profile.id,
      ": ", std::string(missing)));
}

}  // namespace

std::string_view RequirementKindName(RequirementKind kind) {
  switch (kind) {
    case RequirementKind::kNetFilter:
      return "NetFilter";
    case RequirementKind::kLinkFilter:
      return "LinkFilter";
    case RequirementKind::kFieldFilter:
      return "FieldFilter";
    case RequirementKind::kAdminAuth:
      return "AdminAuth";
    case RequirementKind::kIntegrityControl:
      return "IntegrityControl";
  }
  return "?";
}

std::optional<RequirementKind> ParseRequirementKind(std::string_view name) {
  for (RequirementKind kind :
       {RequirementKind::kNetFilter, RequirementKind::kLinkFilter,
        RequirementKind::kFieldFilter, RequirementKind::kAdminAuth,
        RequirementKind::kIntegrityControl}) {
    if (RequirementKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view ProcedureKindName(ProcedureKind kind) {
  switch (kind) {
    case ProcedureKind::kFilter:
      return "filter";
    case ProcedureKind::kAuth:
      return "auth";
    case ProcedureKind::kIntegrity:
      return "integrity";
  }
  return "?";
}

std::optional<ProcedureKind> ParseProcedureKind(std::string_view name) {
  if (name == "filter") return ProcedureKind::kFilter;
  if (name == "auth") return ProcedureKind::kAuth;
  if (name == "integrity") return ProcedureKind::kIntegrity;
  return std::nullopt;
}

std::string_view FilterLevelName(FilterLevel level) {
  switch (level) {
    case FilterLevel::kNetwork:
      return "network";
    case FilterLevel::kLink:
      return "link";
    case FilterLevel::kFields:
      return "fields";
  }
  return "?";
}

std::optional<FilterLevel> ParseFilterLevel(std::string_view name) {
  if (name == "network") return FilterLevel::kNetwork;
  if (name == "link") return FilterLevel::kLink;
  if (name == "fields") return FilterLevel::kFields;
  return std::nullopt;
}

std::vector<Requirement> MainRequirementCatalog() {
  return {
      {"r1", RequirementKind::kNetFilter,
       "Packet filter keyed on IPv4 source and destination.",
       {}},
      {"r2", RequirementKind::kAdminAuth,
       "Password login for administrators.",
       {}},
      {"r3", RequirementKind::kIntegrityControl,
       "Change detection for firewall files.",
       {}},
  };
}

std::vector<Requirement> ExtendedRequirementCatalog() {
  std::vector<Requirement> catalog = MainRequirementCatalog();
  catalog.push_back({"r1-link", RequirementKind::kLinkFilter,
                     "Packet filter keyed on MAC addresses.",
                     {FilterField::kLink}});
  catalog.push_back({"r1-fields", RequirementKind::kFieldFilter,
                     "Packet filter keyed on protocol number and TTL.",
                     {FilterField::kProto, FilterField::kTtl}});
  return catalog;
}

std::optional<Requirement> FindBuiltinRequirement(std::string_view id) {
  for (Requirement& req : ExtendedRequirementCatalog()) {
    if (req.id == id) return std::move(req);
  }
  return std::nullopt;
}

absl::Status ValidateCatalog(const std::vector<Requirement>& catalog) {
  std::set<std::string> ids;
  for (const Requirement& req : catalog) {
    if (req.id.empty()) {
      return absl::InvalidArgumentError("requirement with empty id");
    }
    if (!ids.insert(req.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate requirement id '", req.id, "'"));
    }
  }
  return absl::OkStatus();
}

std::vector<int> TestProcedure::StepNumbers() const {
  std::vector<int> out;
  for (const ProcedureStep& step : plan) out.push_back(step.number);
  return out;
}

ProcedureOutcome MakeOutcome(std::string procedure, std::string requirement,
                             std::vector<CriterionResult> breakdown) {
  ProcedureOutcome out;
  out.procedure = std::move(procedure);
  out.requirement = std::move(requirement);
  out.f_c = std::all_of(breakdown.begin(), breakdown.end(),
                        [](const CriterionResult& c) { return c.holds; });
  out.breakdown = std::move(breakdown);
  return out;
}

std::string ProcedureId(std::string_view profile_id,
                        std::string_view requirement_id) {
  return absl::StrCat("t[", std::string(profile_id), "]:",
                      std::string(requirement_id));
}

absl::StatusOr<TestProcedure> DevelopProcedure(const FirewallProfile& profile,
                                               const Requirement& req) {
  const Capabilities& caps = profile.capabilities;
  TestProcedure proc;
  proc.id = ProcedureId(profile.id, req.id);
  proc.source_requirement = req.id;
  proc.objective = absl::StrCat(
      "Evaluate conformance of firewall ", profile.id, " to ", req.id, " (",
      std::string(RequirementKindName(req.kind)), ")");

  auto filter_template = [&](FilterLevel level) {
    proc.kind = ProcedureKind::kFilter;
    proc.level = level;
    proc.plan = FilterPlan();
    proc.expected = {std::string(criteria::kFilterOutEqualsAllowRules),
                     std::string(criteria::kFilterDroppedEqualsDenyRules),
                     std::string(criteria::kFilterOutEqualsAllowJournal),
                     std::string(criteria::kFilterDroppedEqualsDenyJournal)};
  };

  switch (req.kind) {
    case RequirementKind::kNetFilter:
      if (!caps.network_layer) {
        return Unsupported(profile, req, "no network-layer filtering");
      }
      filter_template(FilterLevel::kNetwork);
      break;
    case RequirementKind::kLinkFilter:
      if (!caps.link_layer) {
        return Unsupported(profile, req, "no link-layer descriptor");
      }
      filter_template(FilterLevel::kLink);
      break;
    case RequirementKind::kFieldFilter: {
      if (req.fields.empty()) {
        return Unsupported(profile, req, "requirement names no fields");
      }
      for (FilterField field : req.fields) {
        bool available = field == FilterField::kLink
                             ? caps.link_layer
                             : caps.filterable_fields.contains(field);
        if (!available) {
          return Unsupported(
              profile, req,
              absl::StrCat("field '", std::string(FilterFieldName(field)),
                           "' is not filterable"));
        }
      }
      filter_template(FilterLevel::kFields);
      break;
    }
    case RequirementKind::kAdminAuth:
      if (!caps.auth_mode.has_value()) {
        return Unsupported(profile, req, "no authentication mechanism");
      }
      proc.kind = ProcedureKind::kAuth;
      proc.auth_mode = *caps.auth_mode;
      proc.plan = AuthPlan(*caps.auth_mode);
      proc.expected = {std::string(criteria::kAuthRegisteredGranted),
                       std::string(criteria::kAuthUnregisteredDenied),
                       std::string(criteria::kAuthJournalComplete),
                       std::string(criteria::kAuthNoPlaintextCredentials)};
      break;
    case RequirementKind::kIntegrityControl:
      if (!caps.integrity_control) {
        return Unsupported(profile, req, "no integrity-check trigger");
      }
      proc.kind = ProcedureKind::kIntegrity;
      proc.plan = IntegrityPlan();
      proc.expected = {std::string(criteria::kIntegrityDetectionMatches)};
      break;
  }
  return proc;
}

BijectivityReport CheckBijectivity(const std::vector<Requirement>& reqs,
                                   const std::vector<TestProcedure>& procs) {
  std::set<std::string> req_ids;
  for (const Requirement& r : reqs) req_ids.insert(r.id);

  // (b) every procedure is developed for some requirement in R.
  for (const TestProcedure& p : procs) {
    if (!req_ids.contains(p.source_requirement)) {
      return {false, absl::StrCat("orphan procedure ", p.id, " (source ",
                                  p.source_requirement, " not in R)")};
    }
  }
  // (a) r1 != r2 => M(r1) != M(r2), and M is defined on every r.
  std::map<std::string, std::string> proc_of_req;
  std::map<std::string, std::string> req_of_proc;
  for (const TestProcedure& p : procs) {
    auto [it, inserted] = proc_of_req.emplace(p.source_requirement, p.id);
    if (!inserted && it->second != p.id) {
      return {false, absl::StrCat("requirement ", p.source_requirement,
                                  " has two procedures ", it->second, " and ",
                                  p.id)};
    }
    auto [jt, fresh] = req_of_proc.emplace(p.id, p.source_requirement);
    if (!fresh && jt->second != p.source_requirement) {
      return {false, absl::StrCat("requirements ", jt->second, " and ",
                                  p.source_requirement,
                                  " map to the same procedure ", p.id)};
    }
  }
  for (const Requirement& r : reqs) {
    if (!proc_of_req.contains(r.id)) {
      return {false, absl::StrCat("missing procedure for requirement ", r.id)};
    }
  }
  return {true, ""};
}

bool RequirementClaimed(const FirewallProfile& profile,
                        const Requirement& req) {
  return profile.claims.contains(req.id);
}

absl::StatusOr<CampaignVerdict> AggregateVerdict(
    const std::vector<ClaimBit>& claims,
    const std::vector<ProcedureOutcome>& outcomes) {
  std::map<std::string, const ProcedureOutcome*> by_requirement;
  for (const ProcedureOutcome& outcome : outcomes) {
    if (!by_requirement.emplace(outcome.requirement, &outcome).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("misaligned campaign: two outcomes for requirement ",
                       outcome.requirement));
    }
  }
  if (claims.size() != outcomes.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("misaligned campaign: ", claims.size(), " claims vs ",
                     outcomes.size(), " outcomes"));
  }
  std::set<std::string> claimed;
  for (const ClaimBit& claim : claims) {
    if (!claimed.insert(claim.requirement).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("misaligned campaign: requirement ", claim.requirement,
                       " listed twice"));
    }
  }
  CampaignVerdict verdict;
  verdict.n = claims.size();
  for (const ClaimBit& claim : claims) {
    auto it = by_requirement.find(claim.requirement);
    if (it == by_requirement.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "misaligned campaign: no outcome for requirement ",
          claim.requirement));
    }
    const ProcedureOutcome& outcome = *it->second;
    verdict.pairs.push_back(
        {outcome.procedure, claim.requirement, claim.f_r, outcome.f_c});
    verdict.sum += (claim.f_r ? 1 : 0) * (outcome.f_c ? 1 : 0);
  }
  verdict.conform = verdict.sum == verdict.n;
  return verdict;
}

absl::StatusOr<TestingTechnique> TestingTechnique::Create(
    FirewallProfile profile, std::vector<Requirement> requirements) {
  if (absl::Status s = ValidateCatalog(requirements); !s.ok()) return s;
  return TestingTechnique(std::move(profile), std::move(requirements));
}

std::vector<ClaimBit> TestingTechnique::Claims() const {
  std::vector<ClaimBit> out;
  for (const Requirement& req : requirements_) {
    out.push_back({req.id, RequirementClaimed(profile_, req)});
  }
  return out;
}

absl::StatusOr<std::vector<TestProcedure>> TestingTechnique::DevelopAll()
    const {
  std::vector<TestProcedure> out;
  for (const Requirement& req : requirements_) {
    absl::StatusOr<TestProcedure> proc = DevelopProcedure(profile_, req);
    if (!proc.ok()) return proc.status();
    out.push_back(*std::move(proc));
  }
  return out;
}

absl::StatusOr<CampaignVerdict> TestingTechnique::Evaluate(
    const ValidityOperator& f_c) const {
  absl::StatusOr<std::vector<TestProcedure>> procs = DevelopAll();
  if (!procs.ok()) return procs.status();
  std::vector<ProcedureOutcome> outcomes;
  for (const TestProcedure& proc : *procs) {
    absl::StatusOr<ProcedureOutcome> outcome = f_c(proc);
    if (!outcome.ok()) {
      return absl::Status(outcome.status().code(),
                          absl::StrCat(proc.id, ": ",
                                       outcome.status().message()));
    }
    outcomes.push_back(*std::move(outcome));
  }
  return AggregateVerdict(Claims(), outcomes);
}

}  // namespace fwconform

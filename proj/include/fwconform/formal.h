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

#ifndef FWCONFORM_FORMAL_H_
#define FWCONFORM_FORMAL_H_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fwconform/firewall.h"
#include "fwconform/rule.h"

namespace fwconform {

// The formal testing model. A testing technique binds a firewall profile,
// a requirement catalog R, the development mapping M : profile x R -> T,
// the claim operator F_R and the validity operator F_C. Conformance holds
// iff sum_i F_R(r_i) * F_C(M(r_i)) == n.

enum class RequirementKind {
  kNetFilter,
  kLinkFilter,
  kFieldFilter,
  kAdminAuth,
  kIntegrityControl,
};

std::string_view RequirementKindName(RequirementKind kind);
std::optional<RequirementKind> ParseRequirementKind(std::string_view name);

struct Requirement {
  std::string id;
  RequirementKind kind = RequirementKind::kNetFilter;
  std::string text;
  // Packet fields the filtering must take into account (FieldFilter).
  std::set<FilterField> fields;

  friend bool operator==(const Requirement&, const Requirement&) = default;
};

// Built-in catalog: the three main firewall requirements.
std::vector<Requirement> MainRequirementCatalog();
// The main catalog plus the link-level and field-level filtering variants.
std::vector<Requirement> ExtendedRequirementCatalog();
std::optional<Requirement> FindBuiltinRequirement(std::string_view id);

// Checks id uniqueness.
absl::Status ValidateCatalog(const std::vector<Requirement>& catalog);

// Configuration surface of the firewall under test.
struct Capabilities {
  bool network_layer = true;
  bool link_layer = false;
  std::set<FilterField> filterable_fields;
  // nullopt: no administrator authentication mechanism.
  std::optional<AuthMode> auth_mode;
  bool integrity_control = false;

  friend bool operator==(const Capabilities&, const Capabilities&) = default;
};

struct FirewallProfile {
  std::string id;
  // Requirement ids the vendor documentation asserts are met.
  std::set<std::string> claims;
  Capabilities capabilities;

  friend bool operator==(const FirewallProfile&,
                         const FirewallProfile&) = default;
};

enum class ProcedureKind { kFilter, kAuth, kIntegrity };
enum class FilterLevel { kNetwork, kLink, kFields };

std::string_view ProcedureKindName(ProcedureKind kind);
std::optional<ProcedureKind> ParseProcedureKind(std::string_view name);
std::string_view FilterLevelName(FilterLevel level);
std::optional<FilterLevel> ParseFilterLevel(std::string_view name);

struct ProcedureStep {
  int number = 0;
  std::string action;

  friend bool operator==(const ProcedureStep&, const ProcedureStep&) = default;
};

struct TestProcedure {
  std::string id;
  std::string source_requirement;
  std::string objective;
  ProcedureKind kind = ProcedureKind::kFilter;
  // Meaningful for kFilter only.
  FilterLevel level = FilterLevel::kNetwork;
  // Meaningful for kAuth only.
  AuthMode auth_mode = AuthMode::kRemote;
  // Ordered, non-empty.
  std::vector<ProcedureStep> plan;
  // Labels of the acceptance criteria whose model results must be matched.
  std::vector<std::string> expected;

  std::vector<int> StepNumbers() const;

  friend bool operator==(const TestProcedure&, const TestProcedure&) = default;
};

// Criterion labels, shared by the procedure templates and the evaluators.
namespace criteria {
inline constexpr std::string_view kFilterOutEqualsAllowRules =
    "filter-1: PACKET_OUT = RULE1";
inline constexpr std::string_view kFilterDroppedEqualsDenyRules =
    "filter-2: PACKET_IN \\ PACKET_OUT = RULE0";
inline constexpr std::string_view kFilterOutEqualsAllowJournal =
    "filter-3: PACKET_OUT = JOUR1";
inline constexpr std::string_view kFilterDroppedEqualsDenyJournal =
    "filter-4: PACKET_IN \\ PACKET_OUT = JOUR0";
inline constexpr std::string_view kAuthRegisteredGranted =
    "auth-1: F_AUT(try) = 1 <=> try in ADM";
inline constexpr std::string_view kAuthUnregisteredDenied =
    "auth-2: F_AUT(try) = 0 <=> try not in ADM";
inline constexpr std::string_view kAuthJournalComplete =
    "auth-3: journal records every attempt";
inline constexpr std::string_view kAuthNoPlaintextCredentials =
    "auth-4: no credentials in captured traffic";
inline constexpr std::string_view kIntegrityDetectionMatches =
    "integrity-1: F_INT(file_delta) = F_MOD(file)";
}  // namespace criteria

struct CriterionResult {
  std::string label;
  bool holds = false;
  std::string detail;

  friend bool operator==(const CriterionResult&,
                         const CriterionResult&) = default;
};

struct ProcedureOutcome {
  std::string procedure;
  std::string requirement;
  // Conjunction of the breakdown bits.
  bool f_c = false;
  std::vector<CriterionResult> breakdown;

  friend bool operator==(const ProcedureOutcome&,
                         const ProcedureOutcome&) = default;
};

// Builds an outcome whose f_c is the conjunction of `breakdown`.
ProcedureOutcome MakeOutcome(std::string procedure, std::string requirement,
                             std::vector<CriterionResult> breakdown);

// M(profile, req). Fails with FailedPrecondition (unsupported requirement)
// when the profile lacks the surface the procedure needs.
absl::StatusOr<TestProcedure> DevelopProcedure(const FirewallProfile& profile,
                                               const Requirement& req);

// Deterministic, injective in the requirement id for a fixed profile.
std::string ProcedureId(std::string_view profile_id,
                        std::string_view requirement_id);

struct BijectivityReport {
  bool holds = false;
  // On failure: the offending requirement and/or procedure.
  std::string counterexample;
};

// (a) distinct requirements map to distinct procedures and every
// requirement has one, (b) every procedure's source is in `reqs`.
BijectivityReport CheckBijectivity(const std::vector<Requirement>& reqs,
                                   const std::vector<TestProcedure>& procs);

// F_R: claim-set membership.
bool RequirementClaimed(const FirewallProfile& profile, const Requirement& req);

struct ClaimBit {
  std::string requirement;
  bool f_r = false;

  friend bool operator==(const ClaimBit&, const ClaimBit&) = default;
};

struct VerdictPair {
  std::string procedure;
  std::string requirement;
  bool f_r = false;
  bool f_c = false;

  friend bool operator==(const VerdictPair&, const VerdictPair&) = default;
};

struct CampaignVerdict {
  // In requirement-catalog order.
  std::vector<VerdictPair> pairs;
  size_t n = 0;
  size_t sum = 0;
  bool conform = false;

  friend bool operator==(const CampaignVerdict&,
                         const CampaignVerdict&) = default;
};

// Fails with InvalidArgument (misaligned campaign) if some claim has no
// outcome or vice versa.
absl::StatusOr<CampaignVerdict> AggregateVerdict(
    const std::vector<ClaimBit>& claims,
    const std::vector<ProcedureOutcome>& outcomes);

// The testing technique {profile, R, M, F_R, F_C}. F_C is supplied at run
// time as a callable that executes and evaluates one procedure.
class TestingTechnique {
 public:
  using ValidityOperator =
      std::function<absl::StatusOr<ProcedureOutcome>(const TestProcedure&)>;

  static absl::StatusOr<TestingTechnique> Create(
      FirewallProfile profile, std::vector<Requirement> requirements);

  const FirewallProfile& profile() const { return profile_; }
  const std::vector<Requirement>& requirements() const {
    return requirements_;
  }

  // Planning stage: F_R bits and developed procedures, in catalog order.
  std::vector<ClaimBit> Claims() const;
  absl::StatusOr<std::vector<TestProcedure>> DevelopAll() const;

  // Testing and analysis stages.
  absl::StatusOr<CampaignVerdict> Evaluate(const ValidityOperator& f_c) const;

 private:
  TestingTechnique(FirewallProfile profile,
                   std::vector<Requirement> requirements)
      : profile_(std::move(profile)), requirements_(std::move(requirements)) {}

  FirewallProfile profile_;
  std::vector<Requirement> requirements_;
};

}  // namespace fwconform

#endif  // FWCONFORM_FORMAL_H_

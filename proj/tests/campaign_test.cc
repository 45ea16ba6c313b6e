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

#include <string>
#include <vector>

#include "fwconform/fault.h"
#include "fwconform/report.h"
#include "fwconform/scenario.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fwconform {
namespace {

using ::fwconform::testing::Unwrap;

Scenario LoadBundled(const char* name) {
  ScenarioParse p =
      LoadScenario(std::string(FWCONFORM_SCENARIO_DIR) + "/" + name);
  if (!p.scenario) {
    ADD_FAILURE() << name << ": " << p.errors.front().ToString();
    std::abort();
  }
  return *p.scenario;
}

CampaignOptions Fixed(std::vector<FaultKind> faults = {}) {
  CampaignOptions o;
  o.generated_at = "2026-01-01T00:00:00Z";
  o.faults = std::move(faults);
  return o;
}

std::vector<std::string> FailingLabels(const Report& r) {
  std::vector<std::string> out;
  for (const ProcedureRecord& rec : r.procedures) {
    for (const CriterionResult& c : rec.outcome.breakdown) {
      if (!c.holds) out.push_back(c.label);
    }
  }
  return out;
}

TEST(CampaignTest, ReferenceConforms) {
  Report r = Unwrap(RunCampaign(LoadBundled("reference.fwc"), Fixed()));
  EXPECT_TRUE(r.verdict.conform);
  EXPECT_EQ(r.verdict.n, r.procedures.size());
  EXPECT_EQ(r.verdict.sum, r.verdict.n);
  EXPECT_TRUE(FailingLabels(r).empty());
  EXPECT_EQ(r.metadata.tool, kToolName);
  FWC_EXPECT_OK(AuditReport(r));
}

TEST(CampaignTest, MinimalConformsAndSummarizes) {
  Report r = Unwrap(RunCampaign(LoadBundled("minimal.fwc"), Fixed()));
  EXPECT_TRUE(r.verdict.conform);
  std::string human = RenderHuman(r);
  EXPECT_NE(human.find("All 3 procedures passed."), std::string::npos)
      << human;
  EXPECT_NE(human.find("CONFORM"), std::string::npos);
}

TEST(CampaignTest, AcceptAnyPasswordFailsAuthTwo) {
  Report r = Unwrap(
      RunCampaign(LoadBundled("minimal.fwc"), Fixed({AcceptAnyPassword{}})));
  EXPECT_FALSE(r.verdict.conform);
  EXPECT_EQ(FailingLabels(r),
            std::vector<std::string>{
                std::string(criteria::kAuthUnregisteredDenied)});
  std::string human = RenderHuman(r);
  EXPECT_NE(human.find(criteria::kAuthUnregisteredDenied), std::string::npos);
  EXPECT_NE(human.find("1 of 3 procedures failed."), std::string::npos)
      << human;
  EXPECT_EQ(r.metadata.faults,
            std::vector<std::string>{FaultToString(AcceptAnyPassword{})});
}

TEST(CampaignTest, SingleRequirementCampaign) {
  Scenario sc = LoadBundled("minimal.fwc");
  sc.profile.claims = {"r1"};
  sc.requirements = {*FindBuiltinRequirement("r1")};
  Report r = Unwrap(RunCampaign(sc, Fixed()));
  EXPECT_EQ(r.verdict.n, 1u);
  EXPECT_TRUE(r.verdict.conform);
  Report broken = Unwrap(RunCampaign(sc, Fixed({InvertRule{0}})));
  EXPECT_EQ(broken.verdict.n, 1u);
  EXPECT_FALSE(broken.verdict.conform);
}

TEST(CampaignTest, UnclaimedRequirementFailsVerdict) {
  Scenario sc = LoadBundled("minimal.fwc");
  sc.profile.claims.erase("r3");
  Report r = Unwrap(RunCampaign(sc, Fixed()));
  EXPECT_FALSE(r.verdict.conform);
  EXPECT_EQ(r.verdict.sum, 2u);
  EXPECT_TRUE(FailingLabels(r).empty());
}

TEST(CampaignTest, DeterministicAndSerialMatchesParallel) {
  Scenario sc = LoadBundled("reference.fwc");
  Report a = Unwrap(RunCampaign(sc, Fixed()));
  Report b = Unwrap(RunCampaign(sc, Fixed()));
  EXPECT_EQ(ExportMachine(a), ExportMachine(b));
  CampaignOptions serial = Fixed();
  serial.parallel = false;
  EXPECT_EQ(Unwrap(RunCampaign(sc, serial)), a);
  CampaignOptions reseeded = Fixed();
  reseeded.seed = sc.seed + 1;
  Report c = Unwrap(RunCampaign(sc, reseeded));
  EXPECT_EQ(c.verdict, a.verdict);
  EXPECT_NE(ExportMachine(c), ExportMachine(a));
}

TEST(CampaignTest, InapplicableFaultIsRejected) {
  absl::StatusOr<Report> r = RunCampaign(LoadBundled("minimal.fwc"),
                                         Fixed({InvertRule{9}}));
  EXPECT_FALSE(r.ok());
}

TEST(CampaignTest, AuditDetectsTampering) {
  Report r = Unwrap(RunCampaign(LoadBundled("minimal.fwc"), Fixed()));
  Report flipped = r;
  flipped.procedures[0].outcome.breakdown[0].holds = false;
  EXPECT_EQ(AuditReport(flipped).code(), absl::StatusCode::kDataLoss);
  Report verdict = r;
  verdict.verdict.conform = false;
  EXPECT_EQ(AuditReport(verdict).code(), absl::StatusCode::kDataLoss);
}

TEST(ReportTest, MachineRoundTrip) {
  for (const char* name : {"minimal.fwc", "reference.fwc"}) {
    for (bool faulty : {false, true}) {
      std::vector<FaultKind> faults;
      if (faulty) faults.push_back(LeakCredentialsInCapture{});
      Report r = Unwrap(RunCampaign(LoadBundled(name), Fixed(faults)));
      std::string text = ExportMachine(r);
      Report back = Unwrap(ImportMachine(text));
      EXPECT_EQ(back, r) << name;
      EXPECT_EQ(ExportMachine(back), text);
      FWC_EXPECT_OK(AuditReport(back));
    }
  }
}

TEST(ReportTest, ImportRejectsMalformed) {
  Report r = Unwrap(RunCampaign(LoadBundled("minimal.fwc"), Fixed()));
  std::string text = ExportMachine(r);
  EXPECT_EQ(ImportMachine("not json").status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(ImportMachine("{}").ok());
  std::string wrong_version = text;
  size_t pos = wrong_version.find("\"version\": 1");
  ASSERT_NE(pos, std::string::npos);
  wrong_version.replace(pos, 12, "\"version\": 99");
  EXPECT_FALSE(ImportMachine(wrong_version).ok());
}

TEST(ReportTest, HumanListsEveryFailingLabel) {
  Report r = Unwrap(RunCampaign(
      LoadBundled("reference.fwc"),
      Fixed({OmitAuthJournal{}, BlindIntegrity{"kernel.img"}})));
  std::string human = RenderHuman(r);
  for (const std::string& label : FailingLabels(r)) {
    EXPECT_NE(human.find(label), std::string::npos) << label;
  }
  EXPECT_NE(human.find("NONCONFORM"), std::string::npos);
}

TEST(ReportTest, FileIo) {
  std::string path = ::testing::TempDir() + "/fwconform_report_test.json";
  FWC_ASSERT_OK(WriteFile(path, "abc"));
  EXPECT_EQ(Unwrap(ReadFile(path)), "abc");
  EXPECT_EQ(ReadFile("/nonexistent/x").status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_EQ(WriteFile("/nonexistent/dir/x", "a").code(),
            absl::StatusCode::kUnavailable);
}

}  // namespace
}  // namespace fwconform

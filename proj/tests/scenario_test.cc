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

#include "fwconform/scenario.h"

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace fwconform {
namespace {

using ::fwconform::testing::Host;

constexpr char kMinimal[] = R"(# comment
[scenario]
name = minimal
seed = 1

[profile]
id = fw-min
claims = r1 r2 r3
auth = remote
integrity = yes

[topology]
external = 192.0.2.1
internal = 10.0.0.2
management = 10.0.0.1

[rules]
allow src=192.0.2.1 dst=10.0.0.2

[accounts]
root hunter2

[files]
rules.conf = "allow # not a comment\n"

[mutations]
replace rules.conf "allow any any\n"
)";

std::string Errors(const ScenarioParse& p) {
  std::string out;
  for (const ScenarioError& e : p.errors) out += e.ToString() + "\n";
  return out;
}

bool HasError(const ScenarioParse& p, int line, const std::string& needle) {
  for (const ScenarioError& e : p.errors) {
    if ((line < 0 || e.line == line) &&
        e.message.find(needle) != std::string::npos) {
      return true;
    }
  }
  return false;
}

std::string Replace(std::string text, const std::string& from,
                    const std::string& to) {
  size_t pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

TEST(ScenarioTest, MinimalParses) {
  ScenarioParse p = ParseScenario(kMinimal);
  ASSERT_TRUE(p.scenario.has_value()) << Errors(p);
  const Scenario& sc = *p.scenario;
  EXPECT_EQ(sc.name, "minimal");
  EXPECT_EQ(sc.seed, 1u);
  EXPECT_EQ(sc.profile.claims, (std::set<std::string>{"r1", "r2", "r3"}));
  ASSERT_EQ(sc.requirements.size(), 3u);
  EXPECT_EQ(sc.requirements[0].id, "r1");
  EXPECT_EQ(sc.topology.external, std::vector<Address>{Host("192.0.2.1")});
  EXPECT_EQ(sc.management, Host("10.0.0.1"));
  ASSERT_EQ(sc.rules.size(), 1u);
  EXPECT_EQ(sc.accounts[0].id, "root");
  ASSERT_EQ(sc.files.size(), 1u);
  EXPECT_EQ(sc.files[0].content, "allow # not a comment\n");
  ASSERT_EQ(sc.mutations.size(), 1u);
  EXPECT_EQ(sc.budget, kUnlimitedBudget);
  EXPECT_TRUE(ValidateScenario(sc).empty());
}

TEST(ScenarioTest, DefaultVariantsAndFirewallConfig) {
  Scenario sc = *ParseScenario(kMinimal).scenario;
  VariantTable table = CampaignVariants(sc);
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table.at("r2").front().variant_id, kDefaultVariantId);
  EXPECT_EQ(table.at("r2").front().cost, 0);
  FirewallConfig c = MakeFirewallConfig(sc);
  EXPECT_EQ(c.auth_mode, AuthMode::kRemote);
  EXPECT_EQ(c.management, Host("10.0.0.1"));
  EXPECT_EQ(c.seed, 1u);
}

TEST(ScenarioTest, UnknownAddressIsNamed) {
  ScenarioParse p = ParseScenario(
      Replace(kMinimal, "dst=10.0.0.2\n", "dst=10.0.0.99\n"));
  EXPECT_FALSE(p.scenario.has_value());
  EXPECT_TRUE(HasError(p, 18, "10.0.0.99")) << Errors(p);
  EXPECT_EQ(p.errors.size(), 1u) << Errors(p);
}

TEST(ScenarioTest, DuplicateAccount) {
  ScenarioParse p = ParseScenario(
      Replace(kMinimal, "root hunter2\n", "root hunter2\nroot other\n"));
  EXPECT_FALSE(p.scenario.has_value());
  EXPECT_TRUE(HasError(p, 22, "duplicate account id 'root'")) << Errors(p);
}

TEST(ScenarioTest, ReportsEveryError) {
  std::string text = kMinimal;
  text = Replace(text, "seed = 1", "seed = x");
  text = Replace(text, "auth = remote", "auth = kerberos");
  text = Replace(text, "allow src=192.0.2.1", "permit src=192.0.2.1");
  text = Replace(text, "replace rules.conf", "replace other.conf");
  text += "[bogus]\n";
  ScenarioParse p = ParseScenario(text);
  EXPECT_FALSE(p.scenario.has_value());
  EXPECT_TRUE(HasError(p, 4, "invalid seed")) << Errors(p);
  EXPECT_TRUE(HasError(p, 9, "auth expects")) << Errors(p);
  EXPECT_TRUE(HasError(p, 18, "allow or deny")) << Errors(p);
  EXPECT_TRUE(HasError(p, 27, "unknown file 'other.conf'")) << Errors(p);
  EXPECT_TRUE(HasError(p, 28, "unknown section [bogus]")) << Errors(p);
  // Nothing beyond the five, and no repeats at whole-scenario level.
  EXPECT_EQ(p.errors.size(), 5u) << Errors(p);
  for (size_t i = 1; i < p.errors.size(); ++i) {
    EXPECT_LE(p.errors[i - 1].line, p.errors[i].line);
  }
}

TEST(ScenarioTest, CrossReferenceChecks) {
  // Overlapping segments.
  EXPECT_TRUE(HasError(
      ParseScenario(Replace(kMinimal, "internal = 10.0.0.2",
                            "internal = 10.0.0.2 192.0.2.1")),
      -1, "192.0.2.1"));
  // Claim of an unknown requirement.
  EXPECT_TRUE(HasError(
      ParseScenario(Replace(kMinimal, "claims = r1 r2 r3", "claims = r1 r7")),
      8, "unknown requirement 'r7'"));
  // Remote authentication without a management address.
  EXPECT_TRUE(HasError(
      ParseScenario(Replace(kMinimal, "management = 10.0.0.1\n", "")), 0,
      "management"));
  // Integrity claimed without files.
  std::string no_files = Replace(kMinimal, "rules.conf = \"allow # not a comment\\n\"\n", "");
  no_files = Replace(no_files, "replace rules.conf \"allow any any\\n\"\n", "");
  EXPECT_TRUE(HasError(ParseScenario(no_files), 0, "[files]"));
  // Mutation out of range.
  EXPECT_TRUE(HasError(
      ParseScenario(Replace(kMinimal, "replace rules.conf \"allow any any\\n\"",
                            "flip rules.conf 500")),
      -1, "rules.conf"));
}

TEST(ScenarioTest, VariantsBudgetAndFaults) {
  std::string text = std::string(kMinimal) +
                     "[campaign]\nbudget = 3\n"
                     "[variants]\n"
                     "r1 manual time=10 cost=0\n"
                     "r1 scripted time=2 cost=2\n"
                     "r2 manual time=5 cost=1\n"
                     "[faults]\ninvert-rule:0\n";
  ScenarioParse p = ParseScenario(text);
  ASSERT_TRUE(p.scenario.has_value()) << Errors(p);
  EXPECT_EQ(p.scenario->budget, 3);
  VariantTable table = CampaignVariants(*p.scenario);
  EXPECT_EQ(table.at("r1").size(), 2u);
  EXPECT_EQ(table.at("r3").front().variant_id, kDefaultVariantId);
  ASSERT_EQ(p.scenario->faults.size(), 1u);

  ScenarioParse tight = ParseScenario(Replace(text, "budget = 3", "budget = 0"));
  EXPECT_TRUE(HasError(tight, -1, "infeasible")) << Errors(tight);
  ScenarioParse outside =
      ParseScenario(text + "[variants]\nr1-link manual time=1 cost=0\n");
  EXPECT_TRUE(HasError(outside, -1, "outside the campaign")) << Errors(outside);
  ScenarioParse bad_fault =
      ParseScenario(Replace(text, "invert-rule:0", "invert-rule:5"));
  EXPECT_FALSE(bad_fault.scenario.has_value());
}

TEST(ScenarioTest, ExplicitRequirementsSubset) {
  std::string text = std::string(kMinimal) + "[campaign]\nrequirements = r1\n";
  ScenarioParse p = ParseScenario(text);
  ASSERT_TRUE(p.scenario.has_value()) << Errors(p);
  ASSERT_EQ(p.scenario->requirements.size(), 1u);
  EXPECT_EQ(CampaignVariants(*p.scenario).size(), 1u);
}

TEST(ScenarioTest, QuotedEscapesAndHex) {
  ScenarioParse p = ParseScenario(Replace(
      kMinimal, "rules.conf = \"allow # not a comment\\n\"",
      "rules.conf = \"a\\\"b\\\\c\\x00\"\nblob = hex:00ff"));
  ASSERT_TRUE(p.scenario.has_value()) << Errors(p);
  EXPECT_EQ(p.scenario->files[0].content, std::string("a\"b\\c\0", 6));
  EXPECT_EQ(p.scenario->files[1].content, std::string("\x00\xff", 2));
  EXPECT_FALSE(
      ParseScenario(Replace(kMinimal, "\"allow # not a comment\\n\"",
                            "\"unterminated"))
          .scenario.has_value());
}

TEST(ScenarioTest, NonAsciiIdentifiersRejected) {
  ScenarioParse p =
      ParseScenario(Replace(kMinimal, "root hunter2", "r\xc3\xb6ot hunter2"));
  EXPECT_FALSE(p.scenario.has_value());
}

TEST(ScenarioTest, LoadMissingFile) {
  ScenarioParse p = LoadScenario("/nonexistent/scenario.fwc");
  EXPECT_FALSE(p.scenario.has_value());
  ASSERT_FALSE(p.errors.empty());
}

TEST(ScenarioTest, BundledScenariosValidate) {
  for (const char* name : {"minimal.fwc", "reference.fwc"}) {
    ScenarioParse p =
        LoadScenario(std::string(FWCONFORM_SCENARIO_DIR) + "/" + name);
    EXPECT_TRUE(p.scenario.has_value()) << name << "\n" << Errors(p);
  }
}

}  // namespace
}  // namespace fwconform

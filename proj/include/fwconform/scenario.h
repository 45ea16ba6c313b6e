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

#ifndef FWCONFORM_SCENARIO_H_
#define FWCONFORM_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fwconform/address.h"
#include "fwconform/fault.h"
#include "fwconform/firewall.h"
#include "fwconform/formal.h"
#include "fwconform/optimizer.h"
#include "fwconform/rule.h"
#include "fwconform/testbench.h"

namespace fwconform {

// A campaign description. The text format is documented in
// docs/scenario-format.md.
struct Scenario {
  std::string name = "scenario";
  uint64_t seed = 0;
  FirewallProfile profile;
  // R, in campaign order. Defaults to the claimed requirements.
  std::vector<Requirement> requirements;
  Topology topology;
  std::optional<Address> management;
  std::vector<FilterRule> rules;
  std::vector<TrafficVariant> traffic;
  std::vector<AdminAccount> accounts;
  // Empty: the default attempt set is used.
  std::vector<Credentials> attempts;
  std::vector<FileArtifact> files;
  std::vector<FileEdit> mutations;
  VariantTable variants;
  int64_t budget = kUnlimitedBudget;
  std::vector<FaultKind> faults;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioError {
  // 1-based source line; 0 when the error concerns the scenario as a whole.
  int line = 0;
  std::string message;

  std::string ToString() const;
  friend bool operator==(const ScenarioError&, const ScenarioError&) = default;
};

struct ScenarioParse {
  std::optional<Scenario> scenario;  // set iff errors is empty
  std::vector<ScenarioError> errors;
};

// Parses and validates. Reports every error found, not only the first.
ScenarioParse ParseScenario(std::string_view text);
ScenarioParse LoadScenario(const std::string& path);

// Cross-reference checks on an already built scenario.
std::vector<ScenarioError> ValidateScenario(const Scenario& scenario);

inline constexpr std::string_view kDefaultVariantId = "default";

// The optimizer input for the campaign: the scenario's variants for every
// requirement in R, or a single zero-cost default variant where none are
// given.
VariantTable CampaignVariants(const Scenario& scenario);

// Firewall configuration the scenario describes (before fault injection).
FirewallConfig MakeFirewallConfig(const Scenario& scenario);

}  // namespace fwconform

#endif  // FWCONFORM_SCENARIO_H_

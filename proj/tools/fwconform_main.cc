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

// Command-line front end: validate, plan, run and report.
//
// Exit codes: 0 conform (or success), 1 nonconform, 2 usage or validation
// error, 3 internal error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fwconform/campaign.h"
#include "fwconform/fault.h"
#include "fwconform/optimizer.h"
#include "fwconform/report.h"
#include "fwconform/scenario.h"

namespace {

constexpr int kExitConform = 0;
constexpr int kExitNonconform = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

int ExitFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
      return kExitUsage;
    default:
      return kExitInternal;
  }
}

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return ExitFor(status);
}

std::optional<fwconform::Scenario> Load(const std::string& path) {
  fwconform::ScenarioParse parsed = fwconform::LoadScenario(path);
  for (const fwconform::ScenarioError& e : parsed.errors) {
    std::cerr << path << ":" << e.ToString() << "\n";
  }
  return parsed.scenario;
}

int Validate(const std::string& path) {
  std::optional<fwconform::Scenario> sc = Load(path);
  if (!sc) return kExitUsage;
  std::cout << path << ": ok (" << sc->requirements.size()
            << " requirements)\n";
  return kExitConform;
}

int Plan(const std::string& path) {
  std::optional<fwconform::Scenario> sc = Load(path);
  if (!sc) return kExitUsage;
  absl::StatusOr<fwconform::CampaignPlan> plan =
      fwconform::OptimizePlan(fwconform::CampaignVariants(*sc), sc->budget);
  if (!plan.ok()) return Fail(plan.status());
  for (const auto& [req, v] : plan->chosen) {
    std::cout << req << " " << v.variant_id << " time=" << v.time
              << " cost=" << v.cost << "\n";
  }
  std::cout << "total time=" << plan->total_time
            << " cost=" << plan->total_cost << "\n";
  return kExitConform;
}

int Emit(const fwconform::Report& report, fwconform::ReportFormat format,
         const std::string& out) {
  std::string text = fwconform::Export(report, format);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else if (absl::Status s = fwconform::WriteFile(out, text); !s.ok()) {
    std::cerr << "error: " << s.message() << "\n";
    return kExitInternal;
  }
  return report.verdict.conform ? kExitConform : kExitNonconform;
}

int Run(const std::string& path, const std::string& out,
        const std::string& format, std::optional<uint64_t> seed,
        const std::vector<std::string>& injects) {
  std::optional<fwconform::Scenario> sc = Load(path);
  if (!sc) return kExitUsage;
  fwconform::CampaignOptions options;
  options.seed = seed;
  for (const std::string& text : injects) {
    absl::StatusOr<fwconform::FaultKind> fault = fwconform::ParseFault(text);
    if (!fault.ok()) return Fail(fault.status());
    options.faults.push_back(*fault);
  }
  absl::StatusOr<fwconform::Report> report =
      fwconform::RunCampaign(*sc, options);
  if (!report.ok()) return Fail(report.status());
  return Emit(*report,
              format == "machine" ? fwconform::ReportFormat::kMachine
                                  : fwconform::ReportFormat::kHuman,
              out);
}

int Rerender(const std::string& path, const std::string& out,
             const std::string& format) {
  absl::StatusOr<std::string> text = fwconform::ReadFile(path);
  if (!text.ok()) return Fail(text.status());
  absl::StatusOr<fwconform::Report> report = fwconform::ImportMachine(*text);
  if (!report.ok()) return Fail(report.status());
  if (absl::Status s = fwconform::AuditReport(*report); !s.ok()) {
    std::cerr << "audit failed: " << s.message() << "\n";
    return kExitInternal;
  }
  return Emit(*report,
              format == "machine" ? fwconform::ReportFormat::kMachine
                                  : fwconform::ReportFormat::kHuman,
              out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Firewall conformance campaigns over a simulated testbench",
               "fwconform"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out;
  std::string format = "human";
  std::optional<uint64_t> seed;
  std::vector<std::string> injects;
  std::string report_path;

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate");
  validate->add_option("scenario", scenario_path, "Scenario file")
      ->required();

  CLI::App* plan = app.add_subcommand("plan", "Run the campaign optimizer");
  plan->add_option("scenario", scenario_path, "Scenario file")->required();

  CLI::App* run = app.add_subcommand("run", "Run the full campaign");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out, "Output path (default stdout)");
  run->add_option("--format", format, "human or machine")
      ->check(CLI::IsMember({"human", "machine"}));
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--inject", injects, "Inject a fault, e.g. invert-rule:0")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  CLI::App* report = app.add_subcommand(
      "report", "Audit and re-render a machine report");
  report->add_option("report", report_path, "Machine report")->required();
  report->add_option("--out", out, "Output path (default stdout)");
  report->add_option("--format", format, "human or machine")
      ->check(CLI::IsMember({"human", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitConform : kExitUsage;
  }

  try {
    if (*validate) return Validate(scenario_path);
    if (*plan) return Plan(scenario_path);
    if (*run) return Run(scenario_path, out, format, seed, injects);
    if (*report) return Rerender(report_path, out, format);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
// Usage: acceptance_test <fwconform-cli> <scenario-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fwconform/campaign.h"
#include "fwconform/fault.h"
#include "fwconform/formal.h"
#include "fwconform/optimizer.h"
#include "fwconform/report.h"
#include "fwconform/scenario.h"
#include "fwconform/testbench.h"
#include "fwconform/verdict.h"
#include "test_util.h"

namespace fwconform {
namespace {

using ::fwconform::testing::Gen;

// Iteration counts and wall-clock limits, in seconds.
constexpr int kCatalogInstances = 1000;
constexpr double kFormalLimit = 5.0;
constexpr int kFilterScenarios = 500;
constexpr double kFilterLimit = 30.0;
constexpr size_t kFaultVariantsRequired = 8;
constexpr double kAuthLimit = 5.0;
constexpr int kIntegrityFiles = 6;
constexpr double kIntegrityLimit = 5.0;
constexpr int kOptimizerInstances = 200;
constexpr double kOptimizerLimit = 10.0;

// Collects the first failure message of a criterion.
class Check {
 public:
  bool Expect(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      first_ = what;
    }
    return cond;
  }
  bool ok() const { return ok_; }
  const std::string& first() const { return first_; }

 private:
  bool ok_ = true;
  std::string first_;
};

struct Outcome {
  bool pass = false;
  std::string summary;
};

int RunCriterion(int number, const std::string& name, double limit,
           const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o = body();
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  bool in_time = limit <= 0 || secs < limit;
  bool pass = o.pass && in_time;
  char timing[64];
  if (limit > 0) {
    std::snprintf(timing, sizeof(timing), "%.2fs < %.0fs", secs, limit);
  } else {
    std::snprintf(timing, sizeof(timing), "%.2fs", secs);
  }
  std::cout << (pass ? "PASS" : "FAIL") << " " << number << " " << name
            << ": " << o.summary << " [" << timing
            << (in_time ? "" : ", over time limit") << "]" << std::endl;
  return pass ? 0 : 1;
}

std::vector<std::string> FailingLabels(const ProcedureOutcome& o) {
  std::vector<std::string> out;
  for (const CriterionResult& c : o.breakdown) {
    if (!c.holds) out.push_back(c.label);
  }
  return out;
}

bool Contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// 1. Bijectivity over random catalogs, aggregation against the product.
Outcome FormalModel() {
  Check check;
  Gen gen(1);
  int instances = 0;
  for (; instances < kCatalogInstances; ++instances) {
    std::vector<Requirement> reqs = gen.RandomCatalog(10);
    FirewallProfile profile = gen.FullProfile(reqs);
    std::vector<TestProcedure> procs;
    std::set<std::string> ids;
    for (const Requirement& r : reqs) {
      absl::StatusOr<TestProcedure> t = DevelopProcedure(profile, r);
      if (!check.Expect(t.ok(), "develop failed: " + std::string(
                                    t.status().message()))) {
        break;
      }
      check.Expect(t->source_requirement == r.id, "wrong source");
      check.Expect(ids.insert(t->id).second, "duplicate procedure id");
      check.Expect(*t == *DevelopProcedure(profile, r), "not deterministic");
      procs.push_back(*t);
    }
    BijectivityReport br = CheckBijectivity(reqs, procs);
    check.Expect(br.holds, "bijectivity failed: " + br.counterexample);
    // Negative controls: an orphan and a missing procedure are caught.
    std::vector<TestProcedure> orphaned = procs;
    orphaned.back().source_requirement = "orphan";
    orphaned.back().id = "t_orphan";
    check.Expect(!CheckBijectivity(reqs, orphaned).holds, "orphan missed");
    std::vector<TestProcedure> missing(procs.begin(), procs.end() - 1);
    check.Expect(!CheckBijectivity(reqs, missing).holds, "gap missed");
  }

  const std::vector<Requirement> main = MainRequirementCatalog();
  int combos = 0;
  for (int mask = 0; mask < (1 << (2 * main.size())); ++mask, ++combos) {
    std::vector<ClaimBit> claims;
    std::vector<ProcedureOutcome> outcomes;
    int product = 1;
    for (size_t i = 0; i < main.size(); ++i) {
      bool f_r = (mask >> (2 * i)) & 1;
      bool f_c = (mask >> (2 * i + 1)) & 1;
      claims.push_back({main[i].id, f_r});
      outcomes.push_back(MakeOutcome("t" + main[i].id, main[i].id,
                                     {{"c", f_c, ""}}));
      product *= (f_r ? 1 : 0) * (f_c ? 1 : 0);
    }
    absl::StatusOr<CampaignVerdict> v = AggregateVerdict(claims, outcomes);
    check.Expect(v.ok() && v->conform == (product == 1),
                 "aggregation mismatch at mask " + std::to_string(mask));
  }
  std::ostringstream s;
  s << instances << " random catalogs bijective, " << combos
    << "/64 aggregation combinations match the product";
  if (!check.ok()) s << "; " << check.first();
  return {check.ok() && instances >= kCatalogInstances && combos == 64,
          s.str()};
}

// 2. Forwarded set against the brute-force evaluator; all four equations.
Outcome FilterOracle() {
  Check check;
  Gen gen(2);
  int scenarios = 0;
  size_t packets = 0;
  std::map<FilterLevel, int> by_level;
  for (; scenarios < kFilterScenarios && check.ok(); ++scenarios) {
    bool macs = gen.Coin(0.6);
    Topology t = gen.RandomTopology(4, macs);
    std::vector<FilterRule> rules = gen.RandomRules(t, 16, true);
    bool link = false, fields = false;
    for (const FilterRule& r : rules) {
      link = link || r.Constrains(FilterField::kLink);
      fields = fields || r.Constrains(FilterField::kProto) ||
               r.Constrains(FilterField::kTtl);
    }
    FilterLevel level = FilterLevel::kNetwork;
    if (link && gen.Coin()) {
      level = FilterLevel::kLink;
    } else if (fields && gen.Coin()) {
      level = FilterLevel::kFields;
    }
    ++by_level[level];
    absl::StatusOr<Firewall> fw = Firewall::Create(FirewallConfig{});
    absl::StatusOr<Testbench> bench =
        Testbench::Create(t, *std::move(fw));
    if (!check.Expect(bench.ok(), "bench")) break;
    absl::StatusOr<FilterEvidence> ev =
        RunFilterProcedure(*bench, rules, level, gen.RandomTraffic());
    if (!check.Expect(ev.ok(), "run: " + std::string(ev.status().message()))) {
      break;
    }
    std::set<uint64_t> expected, actual;
    for (const Packet& p : ev->packet_in) {
      if (testing::OracleForwards(rules, p.Header())) {
        expected.insert(p.payload_tag);
      }
    }
    for (const Packet& p : ev->packet_out) actual.insert(p.payload_tag);
    packets += ev->packet_in.size();
    check.Expect(expected == actual,
                 "forwarded set differs in scenario " +
                     std::to_string(scenarios));
    absl::StatusOr<ProcedureOutcome> o = EvaluateFilterCriteria(*ev);
    if (!check.Expect(o.ok(), "evaluate")) break;
    check.Expect(o->f_c && o->breakdown.size() == 4 &&
                     FailingLabels(*o).empty(),
                 "criteria failed in scenario " + std::to_string(scenarios));
    check.Expect(o->breakdown[0].label == criteria::kFilterOutEqualsAllowRules,
                 "label");
  }
  std::ostringstream s;
  s << scenarios << " scenarios (" << by_level[FilterLevel::kNetwork]
    << " network, " << by_level[FilterLevel::kLink] << " link, "
    << by_level[FilterLevel::kFields] << " fields), " << packets
    << " packets match the oracle, F_C=1 with all four equations";
  if (!check.ok()) s << "; " << check.first();
  return {check.ok() && scenarios >= kFilterScenarios, s.str()};
}

struct FaultCase {
  const char* fault;
  ProcedureKind kind;
  std::string_view label;
};

const std::vector<FaultCase>& FaultCases() {
  static const std::vector<FaultCase> cases = {
      {"invert-rule:0", ProcedureKind::kFilter,
       criteria::kFilterOutEqualsAllowRules},
      {"ignore-field:ttl", ProcedureKind::kFilter,
       criteria::kFilterOutEqualsAllowRules},
      {"ignore-field:link", ProcedureKind::kFilter,
       criteria::kFilterOutEqualsAllowRules},
      {"skip-journal:pass-denied", ProcedureKind::kFilter,
       criteria::kFilterDroppedEqualsDenyJournal},
      {"accept-any-password", ProcedureKind::kAuth,
       criteria::kAuthUnregisteredDenied},
      {"accept-unknown-id", ProcedureKind::kAuth,
       criteria::kAuthUnregisteredDenied},
      {"omit-auth-journal", ProcedureKind::kAuth,
       criteria::kAuthJournalComplete},
      {"blind-integrity:kernel.img", ProcedureKind::kIntegrity,
       criteria::kIntegrityDetectionMatches},
      {"leak-credentials", ProcedureKind::kAuth,
       criteria::kAuthNoPlaintextCredentials},
  };
  return cases;
}

// Failing criterion labels per procedure kind, over the whole report.
std::map<ProcedureKind, std::vector<std::string>> FailuresByKind(
    const fwconform::Report& r) {
  std::map<ProcedureKind, std::vector<std::string>> out;
  for (const ProcedureRecord& rec : r.procedures) {
    for (const std::string& l : FailingLabels(rec.outcome)) {
      out[rec.procedure.kind].push_back(l);
    }
  }
  return out;
}

// 3. Every fault variant is caught by its own evaluator.
Outcome FaultDetection(const Scenario& reference) {
  Check check;
  std::set<size_t> detected;
  for (const FaultCase& fc : FaultCases()) {
    absl::StatusOr<FaultKind> fault = ParseFault(fc.fault);
    if (!check.Expect(fault.ok(), std::string("parse ") + fc.fault)) continue;
    CampaignOptions options;
    options.generated_at = "fixed";
    options.faults = {*fault};
    absl::StatusOr<fwconform::Report> r = RunCampaign(reference, options);
    if (!check.Expect(r.ok(), std::string("run ") + fc.fault)) continue;
    auto failures = FailuresByKind(*r);
    bool ok = !r->verdict.conform && failures.size() == 1 &&
              failures.begin()->first == fc.kind &&
              Contains(failures.begin()->second, fc.label);
    if (check.Expect(ok, std::string("not attributed: ") + fc.fault)) {
      detected.insert(fault->index());
    }
  }
  std::ostringstream s;
  s << detected.size() << "/" << kFaultVariantCount
    << " fault variants detected with the violated criterion named ("
    << FaultCases().size() << " injections)";
  if (!check.ok()) s << "; " << check.first();
  return {check.ok() && detected.size() == kFaultVariantsRequired &&
              kFaultVariantCount == kFaultVariantsRequired,
          s.str()};
}

// 4. Exhaustive authentication over a 6-string universe.
Outcome AuthBiconditional() {
  Check check;
  const std::vector<AdminAccount> adm = {{"alice01", "s3cret!x"},
                                         {"bobby02", "hunter22"},
                                         {"carol03", "tr0ub4d0r"}};
  std::vector<std::string> universe;
  for (const AdminAccount& a : adm) universe.push_back(a.id);
  for (const AdminAccount& a : adm) universe.push_back(a.pwd);
  std::vector<Credentials> attempts;
  for (const std::string& id : universe) {
    for (const std::string& pwd : universe) attempts.push_back({id, pwd});
  }
  std::set<std::pair<std::string, std::string>> registered;
  for (const AdminAccount& a : adm) registered.insert({a.id, a.pwd});

  auto run = [&](AuthMode mode, std::optional<FaultKind> fault)
      -> absl::StatusOr<AuthEvidence> {
    FirewallConfig c;
    c.accounts = adm;
    c.auth_mode = mode;
    c.management = testing::Host("10.0.0.254");
    c.seed = 4;
    absl::StatusOr<Firewall> fw = Firewall::Create(c);
    if (!fw.ok()) return fw.status();
    if (fault) {
      fw = fw->InjectFault(*fault);
      if (!fw.ok()) return fw.status();
    }
    absl::StatusOr<Testbench> bench = Testbench::Create(
        Topology{{testing::Host("192.0.2.1")}, {testing::Host("10.0.0.1")}},
        *std::move(fw));
    if (!bench.ok()) return bench.status();
    return RunAuthProcedure(*bench, adm, attempts, mode);
  };

  size_t checked = 0;
  for (AuthMode mode : {AuthMode::kRemote, AuthMode::kLocal}) {
    absl::StatusOr<AuthEvidence> ev = run(mode, std::nullopt);
    if (!check.Expect(ev.ok(), "run")) break;
    for (const AttemptResult& a : ev->attempts) {
      bool in_adm = registered.contains({a.attempt.id, a.attempt.pwd});
      check.Expect(a.granted == in_adm,
                   "biconditional fails for " + a.attempt.id);
      ++checked;
    }
    absl::StatusOr<ProcedureOutcome> o = EvaluateAuthCriteria(*ev);
    check.Expect(o.ok() && o->f_c, "criteria fail on compliant run");
    check.Expect(o.ok() && o->breakdown[2].holds, "journal incomplete");
    check.Expect(ev->journal.size() == attempts.size(), "journal size");
    check.Expect(ev->credential_findings.empty(), "compliant leak");
  }
  absl::StatusOr<AuthEvidence> leak =
      run(AuthMode::kRemote, LeakCredentialsInCapture{});
  size_t findings = leak.ok() ? leak->credential_findings.size() : 0;
  check.Expect(findings >= 1, "leak not found");

  std::ostringstream s;
  s << attempts.size() << " attempts x 2 modes (" << checked
    << " checks): F_AUT matches ADM, journal complete, 0 findings; leak "
       "fault gives "
    << findings << " finding(s)";
  if (!check.ok()) s << "; " << check.first();
  return {check.ok() && attempts.size() == 36, s.str()};
}

// 5. Every modification subset of six files, compliant and blinded.
Outcome IntegrityMatching() {
  Check check;
  std::vector<FileArtifact> files;
  for (int i = 0; i < kIntegrityFiles; ++i) {
    files.push_back({"file" + std::to_string(i), "content-" + std::to_string(i),
                     std::nullopt});
  }
  auto run = [&](int subset, std::optional<FaultKind> fault)
      -> absl::StatusOr<ProcedureOutcome> {
    FirewallConfig c;
    c.files = files;
    absl::StatusOr<Firewall> fw = Firewall::Create(c);
    if (!fw.ok()) return fw.status();
    if (fault) {
      fw = fw->InjectFault(*fault);
      if (!fw.ok()) return fw.status();
    }
    absl::StatusOr<Testbench> bench = Testbench::Create(
        Topology{{testing::Host("192.0.2.1")}, {testing::Host("10.0.0.1")}},
        *std::move(fw));
    if (!bench.ok()) return bench.status();
    std::vector<FileEdit> edits;
    for (int i = 0; i < kIntegrityFiles; ++i) {
      if (subset & (1 << i)) {
        edits.push_back({files[i].file_id, FlipByte{static_cast<size_t>(i), 0x01}});
      }
    }
    absl::StatusOr<IntegrityEvidence> ev =
        RunIntegrityProcedure(*bench, edits);
    if (!ev.ok()) return ev.status();
    for (int i = 0; i < kIntegrityFiles; ++i) {
      bool modified = subset & (1 << i);
      if (ev->f_mod.at(files[i].file_id) != modified) {
        return absl::InternalError("F_MOD does not match the subset");
      }
    }
    return EvaluateIntegrityCriteria(*ev);
  };

  int compliant = 0;
  int blinded_ok = 0;
  const int subsets = 1 << kIntegrityFiles;
  for (int subset = 0; subset < subsets; ++subset) {
    absl::StatusOr<ProcedureOutcome> o = run(subset, std::nullopt);
    if (check.Expect(o.ok() && o->f_c, "compliant subset " +
                                           std::to_string(subset))) {
      ++compliant;
    }
    bool all_blind = true;
    for (int k = 0; k < kIntegrityFiles; ++k) {
      absl::StatusOr<ProcedureOutcome> b =
          run(subset, BlindIntegrity{files[k].file_id});
      bool should_fail = subset & (1 << k);
      all_blind = all_blind &&
                  check.Expect(b.ok() && b->f_c == !should_fail,
                               "blinded file" + std::to_string(k) +
                                   " subset " + std::to_string(subset));
    }
    if (all_blind) ++blinded_ok;
  }
  std::ostringstream s;
  s << compliant << "/" << subsets << " subsets match on the compliant "
    << "firewall; blinding fails exactly the subsets containing the blinded "
    << "file (" << blinded_ok << "/" << subsets << " subsets, all "
    << kIntegrityFiles << " files)";
  if (!check.ok()) s << "; " << check.first();
  return {check.ok() && compliant == subsets && blinded_ok == subsets,
          s.str()};
}

// 6. Optimizer against exhaustive search.
Outcome OptimizerOptimality() {
  Check check;
  VariantTable worked = {{"r1", {{"r1", "a", 5, 1}, {"r1", "b", 2, 4}}},
                         {"r2", {{"r2", "c", 3, 1}}}};
  absl::StatusOr<CampaignPlan> five = OptimizePlan(worked, 5);
  absl::StatusOr<CampaignPlan> four = OptimizePlan(worked, 4);
  check.Expect(five.ok() && five->total_time == 5 && five->total_cost == 5,
               "worked example, budget 5");
  check.Expect(four.ok() && four->total_time == 8, "worked example, budget 4");

  Gen gen(6);
  int instances = 0, infeasible = 0;
  for (; instances < kOptimizerInstances; ++instances) {
    VariantTable table;
    int n = gen.Int(1, 6);
    int64_t min_cost = 0, max_cost = 0;
    for (int r = 0; r < n; ++r) {
      std::string req = "r" + std::to_string(r);
      int m = gen.Int(1, 5);
      int64_t lo = INT64_MAX, hi = 0;
      for (int v = 0; v < m; ++v) {
        ProcedureVariant pv{req, "v" + std::to_string(v), gen.Int(0, 50),
                            gen.Int(0, 20)};
        lo = std::min(lo, pv.cost);
        hi = std::max(hi, pv.cost);
        table[req].push_back(pv);
      }
      min_cost += lo;
      max_cost += hi;
    }
    int64_t budget = gen.Int(0, static_cast<int>(max_cost) + 2);
    if (gen.Coin(0.1)) budget = kUnlimitedBudget;
    absl::StatusOr<CampaignPlan> dp = OptimizePlan(table, budget);
    absl::StatusOr<CampaignPlan> bf = BruteForcePlan(table, budget);
    check.Expect(dp.ok() == bf.ok(), "feasibility differs");
    check.Expect(dp.ok() == (min_cost <= budget), "feasibility wrong");
    if (dp.ok() && bf.ok()) {
      check.Expect(dp->total_time == bf->total_time, "total_time differs");
      check.Expect(dp->total_cost <= budget, "over budget");
      check.Expect(*dp == *bf, "tie-break differs");
    } else {
      ++infeasible;
      check.Expect(IsInfeasible(dp.status()), "wrong error");
    }
  }
  std::ostringstream s;
  s << "worked example (budget 5 -> time 5, budget 4 -> time 8); "
    << instances << " random instances agree with brute force ("
    << infeasible << " infeasible)";
  if (!check.ok()) s << "; " << check.first();
  return {check.ok() && instances >= kOptimizerInstances, s.str()};
}

int RunCli(const std::string& cli, const std::string& args) {
  std::string cmd = "'" + cli + "' " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string WithoutTimestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"generated_at\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

// 7. CLI determinism and attribution on the bundled reference scenario.
Outcome EndToEnd(const std::string& cli, const std::string& scenario) {
  Check check;
  const std::string dir = std::filesystem::temp_directory_path().string();
  const std::string a = dir + "/fwconform_accept_a.json";
  const std::string b = dir + "/fwconform_accept_b.json";
  int rc_a = RunCli(cli, "run '" + scenario +
                             "' --format machine --seed 7 --out '" + a + "'");
  int rc_b = RunCli(cli, "run '" + scenario +
                             "' --format machine --seed 7 --out '" + b + "'");
  check.Expect(rc_a == 0 && rc_b == 0, "compliant run exit code");
  std::string ta = Slurp(a), tb = Slurp(b);
  check.Expect(!ta.empty() && WithoutTimestamp(ta) == WithoutTimestamp(tb),
               "reports differ beyond the timestamp");
  absl::StatusOr<fwconform::Report> ra = ImportMachine(ta);
  check.Expect(ra.ok() && ra->verdict.conform, "compliant run not conform");
  check.Expect(ra.ok() && ra->metadata.seed == 7, "seed override ignored");
  // The report verb re-audits the written file.
  check.Expect(RunCli(cli, "report '" + a + "'") == 0, "report verb");

  int attributed = 0;
  for (const FaultCase& fc : FaultCases()) {
    std::string out = dir + "/fwconform_accept_fault.json";
    int rc = RunCli(cli, "run '" + scenario + "' --format machine --inject " +
                             fc.fault + " --out '" + out + "'");
    absl::StatusOr<fwconform::Report> r = ImportMachine(Slurp(out));
    bool ok = rc == 1 && r.ok() && !r->verdict.conform;
    if (ok) {
      auto failures = FailuresByKind(*r);
      ok = failures.size() == 1 && failures.begin()->first == fc.kind &&
           Contains(failures.begin()->second, fc.label);
    }
    if (check.Expect(ok, std::string("inject ") + fc.fault)) ++attributed;
    std::remove(out.c_str());
  }
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::ostringstream s;
  s << "two seeded runs identical apart from the timestamp, conform=1; "
    << attributed << "/" << FaultCases().size()
    << " --inject runs give conform=0 with the expected criterion";
  if (!check.ok()) s << "; " << check.first();
  return {check.ok(), s.str()};
}

}  // namespace
}  // namespace fwconform

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <fwconform-cli> <scenario-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string reference = std::string(argv[2]) + "/reference.fwc";
  fwconform::ScenarioParse parsed = fwconform::LoadScenario(reference);
  if (!parsed.scenario) {
    std::cerr << reference << ": cannot load\n";
    return 2;
  }
  using namespace fwconform;
  int failures = 0;
  failures += RunCriterion(1, "formal model", kFormalLimit, FormalModel);
  failures += RunCriterion(2, "filtering oracle equivalence", kFilterLimit,
                     FilterOracle);
  failures += RunCriterion(3, "fault detection completeness", 0,
                     [&] { return FaultDetection(*parsed.scenario); });
  failures += RunCriterion(4, "authentication biconditional", kAuthLimit,
                     AuthBiconditional);
  failures += RunCriterion(5, "integrity matching", kIntegrityLimit,
                     IntegrityMatching);
  failures += RunCriterion(6, "optimizer optimality", kOptimizerLimit,
                     OptimizerOptimality);
  failures += RunCriterion(7, "end-to-end determinism", 0,
                     [&] { return EndToEnd(cli, reference); });
  std::cout << (failures == 0 ? "ALL PASS" : "FAILURES: ") ;
  if (failures != 0) std::cout << failures;
  std::cout << std::endl;
  return failures == 0 ? 0 : 1;
}

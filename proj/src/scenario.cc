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

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fwconform/digest.h"
#include "internal/text_util.h"

namespace fwconform {
namespace {

using internal::ParseNumber;
using internal::Trim;

struct Token {
  std::string text;
  bool quoted = false;
};

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Text before the first '#' that is not inside a quoted string.
std::string_view StripComment(std::string_view line) {
  bool in_quote = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quote && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_quote = !in_quote;
    } else if (c == '#' && !in_quote) {
      return line.substr(0, i);
    }
  }
  return line;
}

// Whitespace-separated words and double-quoted strings. Quoted strings
// accept \" \\ \n \t \r \0 and \xHH.
absl::StatusOr<std::vector<Token>> Tokenize(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    if (internal::IsSpace(text[i])) {
      ++i;
      continue;
    }
    Token tok;
    if (text[i] != '"') {
      while (i < text.size() && !internal::IsSpace(text[i])) {
        if (text[i] == '"') {
          return absl::InvalidArgumentError("unexpected '\"' inside a word");
        }
        tok.text.push_back(text[i++]);
      }
      out.push_back(std::move(tok));
      continue;
    }
    tok.quoted = true;
    ++i;
    bool closed = false;
    while (i < text.size()) {
      char c = text[i++];
      if (c == '"') {
        closed = true;
        break;
      }
      if (c != '\\') {
        tok.text.push_back(c);
        continue;
      }
      if (i >= text.size()) break;
      char e = text[i++];
      switch (e) {
        case '"': tok.text.push_back('"'); break;
        case '\\': tok.text.push_back('\\'); break;
        case 'n': tok.text.push_back('\n'); break;
        case 't': tok.text.push_back('\t'); break;
        case 'r': tok.text.push_back('\r'); break;
        case '0': tok.text.push_back('\0'); break;
        case 'x': {
          int hi = i < text.size() ? HexValue(text[i]) : -1;
          int lo = i + 1 < text.size() ? HexValue(text[i + 1]) : -1;
          if (hi < 0 || lo < 0) {
            return absl::InvalidArgumentError("\\x needs two hex digits");
          }
          tok.text.push_back(static_cast<char>(hi * 16 + lo));
          i += 2;
          break;
        }
        default:
          return absl::InvalidArgumentError(
              absl::StrCat("unknown escape \\", std::string(1, e)));
      }
    }
    if (!closed) return absl::InvalidArgumentError("unterminated string");
    if (i < text.size() && !internal::IsSpace(text[i])) {
      return absl::InvalidArgumentError("missing space after string");
    }
    out.push_back(std::move(tok));
  }
  return out;
}

// Quoted text or hex:<digits>.
absl::StatusOr<std::string> ParseData(const Token& tok) {
  if (tok.quoted) return tok.text;
  std::string_view t = tok.text;
  if (t.starts_with("hex:")) return HexDecode(t.substr(4));
  return absl::InvalidArgumentError(absl::StrCat(
      "expected a quoted string or hex:<digits>, got '", tok.text, "'"));
}

std::optional<bool> ParseBool(std::string_view text) {
  if (text == "yes" || text == "true" || text == "on") return true;
  if (text == "no" || text == "false" || text == "off") return false;
  return std::nullopt;
}

// key=value word, e.g. "ttl=3".
std::optional<std::pair<std::string_view, std::string_view>> SplitAssignment(
    std::string_view word) {
  size_t eq = word.find('=');
  if (eq == std::string_view::npos || eq == 0) return std::nullopt;
  return std::pair{word.substr(0, eq), word.substr(eq + 1)};
}

enum class Section {
  kNone,
  kScenario,
  kProfile,
  kCampaign,
  kTopology,
  kRules,
  kTraffic,
  kAccounts,
  kAttempts,
  kFiles,
  kMutations,
  kVariants,
  kFaults,
};

std::optional<Section> ParseSection(std::string_view name) {
  static const std::map<std::string_view, Section> kSections = {
      {"scenario", Section::kScenario},   {"profile", Section::kProfile},
      {"campaign", Section::kCampaign},   {"topology", Section::kTopology},
      {"rules", Section::kRules},         {"traffic", Section::kTraffic},
      {"accounts", Section::kAccounts},   {"attempts", Section::kAttempts},
      {"files", Section::kFiles},         {"mutations", Section::kMutations},
      {"variants", Section::kVariants},   {"faults", Section::kFaults},
  };
  auto it = kSections.find(name);
  if (it == kSections.end()) return std::nullopt;
  return it->second;
}

// Source lines of parsed elements, for diagnostics raised during
// validation.
struct SourceLines {
  std::map<std::string, int> keys;  // "section.key"
  std::vector<int> rules;
  std::vector<int> accounts;
  std::vector<int> files;
  std::vector<int> mutations;
  std::vector<int> faults;
  std::map<std::string, int> variants;  // requirement id -> first line

  int Key(const std::string& key) const {
    auto it = keys.find(key);
    return it == keys.end() ? 0 : it->second;
  }
};

int LineAt(const SourceLines* lines, const std::vector<int> SourceLines::*field,
           size_t index) {
  if (lines == nullptr) return 0;
  const std::vector<int>& v = lines->*field;
  return index < v.size() ? v[index] : 0;
}

class Validator {
 public:
  // `prior_errors`: errors already found while parsing.
  Validator(const Scenario& sc, const SourceLines* lines, bool prior_errors)
      : sc_(sc), lines_(lines), prior_errors_(prior_errors) {}

  std::vector<ScenarioError> Run() {
    CheckProfile();
    CheckTopology();
    CheckRules();
    CheckAccounts();
    CheckFiles();
    CheckVariants();
    CheckText();
    // The remaining checks build firewalls and procedures from the parts
    // above and would only repeat their errors.
    if (prior_errors_ || !errors_.empty()) return std::move(errors_);
    CheckProcedures();
    CheckFaults();
    return std::move(errors_);
  }

 private:
  void Error(int line, std::string message) {
    errors_.push_back({line, std::move(message)});
  }
  int Key(const std::string& key) const {
    return lines_ == nullptr ? 0 : lines_->Key(key);
  }
  bool HasKind(RequirementKind kind) const {
    return std::any_of(
        sc_.requirements.begin(), sc_.requirements.end(),
        [&](const Requirement& r) { return r.kind == kind; });
  }

  void CheckProfile() {
    if (sc_.profile.id.empty()) Error(0, "[profile] id is missing");
    for (const std::string& claim : sc_.profile.claims) {
      if (!FindBuiltinRequirement(claim)) {
        Error(Key("profile.claims"),
              absl::StrCat("claim names unknown requirement '", claim, "'"));
      }
    }
    if (sc_.requirements.empty()) {
      Error(Key("campaign.requirements"),
            "campaign has no requirements: set [campaign] requirements or "
            "[profile] claims");
    }
    std::set<std::string> seen;
    for (const Requirement& r : sc_.requirements) {
      if (!seen.insert(r.id).second) {
        Error(Key("campaign.requirements"),
              absl::StrCat("requirement '", r.id, "' listed twice"));
      }
    }
  }

  void CheckTopology() {
    const Topology& t = sc_.topology;
    if (t.external.empty()) Error(0, "[topology] external segment is empty");
    if (t.internal.empty()) Error(0, "[topology] internal segment is empty");
    std::set<Ipv4Address> nets;
    std::set<MacAddress> macs;
    for (const auto& [key, hosts] :
         {std::pair{"topology.external", &t.external},
          std::pair{"topology.internal", &t.internal}}) {
      for (const Address& a : *hosts) {
        if (!nets.insert(a.net).second) {
          Error(Key(key), absl::StrCat("address ", a.net.ToString(),
                                       " appears more than once"));
        }
        if (a.link && !macs.insert(*a.link).second) {
          Error(Key(key), absl::StrCat("MAC ", a.link->ToString(),
                                       " appears more than once"));
        }
      }
    }
    if (sc_.management) {
      if (nets.contains(sc_.management->net)) {
        Error(Key("topology.management"),
              absl::StrCat("management address ",
                           sc_.management->net.ToString(),
                           " collides with a host"));
      }
    } else if (HasKind(RequirementKind::kAdminAuth) &&
               sc_.profile.capabilities.auth_mode == AuthMode::kRemote) {
      Error(0, "remote authentication needs [topology] management");
    }
  }

  void CheckRules() {
    std::map<Ipv4Address, const Address*> ext, in;
    for (const Address& a : sc_.topology.external) ext[a.net] = &a;
    for (const Address& a : sc_.topology.internal) in[a.net] = &a;
    auto has_mac = [](const std::map<Ipv4Address, const Address*>& hosts,
                      const MacAddress& mac) {
      return std::any_of(hosts.begin(), hosts.end(), [&](const auto& kv) {
        return kv.second->link == mac;
      });
    };
    for (size_t i = 0; i < sc_.rules.size(); ++i) {
      const FilterRule& r = sc_.rules[i];
      int line = LineAt(lines_, &SourceLines::rules, i);
      if (r.src.IsExact() && !ext.contains(r.src.prefix)) {
        Error(line, absl::StrCat("rule references unknown external address ",
                                 r.src.prefix.ToString()));
      }
      if (r.dst.IsExact() && !in.contains(r.dst.prefix)) {
        Error(line, absl::StrCat("rule references unknown internal address ",
                                 r.dst.prefix.ToString()));
      }
      if (r.src_mac && !has_mac(ext, *r.src_mac)) {
        Error(line, absl::StrCat("rule references unknown external MAC ",
                                 r.src_mac->ToString()));
      }
      if (r.dst_mac && !has_mac(in, *r.dst_mac)) {
        Error(line, absl::StrCat("rule references unknown internal MAC ",
                                 r.dst_mac->ToString()));
      }
    }
  }

  void CheckAccounts() {
    std::set<std::string> ids;
    for (size_t i = 0; i < sc_.accounts.size(); ++i) {
      const AdminAccount& a = sc_.accounts[i];
      int line = LineAt(lines_, &SourceLines::accounts, i);
      if (a.id.empty() || a.pwd.empty()) {
        Error(line, "account id and password must be non-empty");
      }
      if (!ids.insert(a.id).second) {
        Error(line, absl::StrCat("duplicate account id '", a.id, "'"));
      }
    }
    if (!HasKind(RequirementKind::kAdminAuth)) return;
    absl::Status s = absl::OkStatus();
    if (sc_.attempts.empty()) {
      s = DefaultAttempts(sc_.accounts).status();
    } else {
      s = CheckAttemptCoverage(sc_.accounts, sc_.attempts);
    }
    if (!s.ok()) Error(0, std::string(s.message()));
  }

  void CheckFiles() {
    std::map<std::string, std::string> content;
    for (size_t i = 0; i < sc_.files.size(); ++i) {
      const FileArtifact& f = sc_.files[i];
      int line = LineAt(lines_, &SourceLines::files, i);
      if (f.file_id.empty()) Error(line, "file id must be non-empty");
      if (!content.emplace(f.file_id, f.content).second) {
        Error(line, absl::StrCat("duplicate file id '", f.file_id, "'"));
      }
    }
    for (size_t i = 0; i < sc_.mutations.size(); ++i) {
      const FileEdit& e = sc_.mutations[i];
      int line = LineAt(lines_, &SourceLines::mutations, i);
      auto it = content.find(e.file_id);
      if (it == content.end()) {
        Error(line,
              absl::StrCat("mutation references unknown file '", e.file_id,
                           "'"));
        continue;
      }
      absl::StatusOr<std::string> next = ApplyMutation(it->second, e.mutation);
      if (!next.ok()) {
        Error(line, absl::StrCat("mutation of '", e.file_id,
                                 "': ", std::string(next.status().message())));
        continue;
      }
      it->second = *std::move(next);
    }
    if (HasKind(RequirementKind::kIntegrityControl) && sc_.files.empty()) {
      Error(0, "integrity requirement needs at least one [files] entry");
    }
  }

  void CheckProcedures() {
    absl::StatusOr<Firewall> fw = Firewall::Create(MakeFirewallConfig(sc_));
    if (!fw.ok()) {
      Error(0, std::string(fw.status().message()));
      return;
    }
    absl::StatusOr<Testbench> bench = Testbench::Create(sc_.topology, *fw);
    for (const Requirement& r : sc_.requirements) {
      absl::StatusOr<TestProcedure> proc = DevelopProcedure(sc_.profile, r);
      if (!proc.ok()) {
        Error(Key("campaign.requirements"),
              std::string(proc.status().message()));
        continue;
      }
      if (proc->kind != ProcedureKind::kFilter || !bench.ok()) continue;
      absl::Status s = CheckRuleSet(*bench, sc_.rules, proc->level);
      if (!s.ok()) {
        Error(0, absl::StrCat(r.id, ": ", std::string(s.message())));
      }
    }
  }

  void CheckVariants() {
    std::set<std::string> in_r;
    for (const Requirement& r : sc_.requirements) in_r.insert(r.id);
    for (const auto& [req, variants] : sc_.variants) {
      int line = 0;
      if (lines_ != nullptr) {
        auto it = lines_->variants.find(req);
        if (it != lines_->variants.end()) line = it->second;
      }
      if (!in_r.contains(req)) {
        Error(line, absl::StrCat("variant for requirement '", req,
                                 "' outside the campaign"));
      }
    }
    if (sc_.budget < 0) {
      Error(Key("campaign.budget"), "budget must be nonnegative");
      return;
    }
    VariantTable table = CampaignVariants(sc_);
    if (absl::Status s = ValidateVariantTable(table); !s.ok()) {
      Error(0, std::string(s.message()));
      return;
    }
    absl::StatusOr<CampaignPlan> plan = OptimizePlan(table, sc_.budget);
    if (!plan.ok()) {
      Error(Key("campaign.budget"), std::string(plan.status().message()));
    }
  }

  void CheckFaults() {
    if (sc_.faults.empty()) return;
    absl::StatusOr<Firewall> fw = Firewall::Create(MakeFirewallConfig(sc_));
    if (!fw.ok()) return;  // reported by CheckProcedures
    for (size_t i = 0; i < sc_.faults.size(); ++i) {
      absl::StatusOr<Firewall> next = fw->InjectFault(sc_.faults[i]);
      if (!next.ok()) {
        Error(LineAt(lines_, &SourceLines::faults, i),
              absl::StrCat("fault ", FaultToString(sc_.faults[i]), ": ",
                           std::string(next.status().message())));
        continue;
      }
      fw = *std::move(next);
    }
  }

  // Names and credentials end up verbatim in reports; keep them to
  // printable ASCII.
  void CheckText() {
    auto check = [&](int line, std::string_view what, const std::string& s) {
      bool ok = std::all_of(s.begin(), s.end(), [](char c) {
        return c >= 0x20 && c <= 0x7e;
      });
      if (!ok) {
        Error(line, absl::StrCat(std::string(what),
                                 " must be printable ASCII"));
      }
    };
    check(Key("scenario.name"), "scenario name", sc_.name);
    check(Key("profile.id"), "profile id", sc_.profile.id);
    for (size_t i = 0; i < sc_.accounts.size(); ++i) {
      int line = LineAt(lines_, &SourceLines::accounts, i);
      check(line, "account id", sc_.accounts[i].id);
      check(line, "account password", sc_.accounts[i].pwd);
    }
    for (const Credentials& c : sc_.attempts) {
      check(0, "attempt id", c.id);
      check(0, "attempt password", c.pwd);
    }
    for (size_t i = 0; i < sc_.files.size(); ++i) {
      check(LineAt(lines_, &SourceLines::files, i), "file id",
            sc_.files[i].file_id);
    }
    for (const auto& [req, variants] : sc_.variants) {
      for (const ProcedureVariant& v : variants) {
        check(0, "variant id", v.variant_id);
      }
    }
  }

  const Scenario& sc_;
  const SourceLines* lines_;
  bool prior_errors_;
  std::vector<ScenarioError> errors_;
};

class Parser {
 public:
  ScenarioParse Run(std::string_view text) {
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      HandleLine(line_no, text.substr(pos, end - pos));
      pos = end + 1;
    }
    Finish();
    ScenarioParse out;
    std::vector<ScenarioError> v =
        Validator(sc_, &lines_, !errors_.empty()).Run();
    errors_.insert(errors_.end(), v.begin(), v.end());
    std::stable_sort(errors_.begin(), errors_.end(),
                     [](const ScenarioError& a, const ScenarioError& b) {
                       return a.line < b.line;
                     });
    out.errors = std::move(errors_);
    if (out.errors.empty()) out.scenario = std::move(sc_);
    return out;
  }

 private:
  void Error(int line, std::string message) {
    errors_.push_back({line, std::move(message)});
  }
  void Error(int line, const absl::Status& status) {
    Error(line, std::string(status.message()));
  }

  void HandleLine(int line, std::string_view raw) {
    std::string_view content = Trim(StripComment(raw));
    if (content.empty()) return;
    if (content.front() == '[') {
      if (content.back() != ']') {
        Error(line, "malformed section header");
        return;
      }
      std::string_view name = Trim(content.substr(1, content.size() - 2));
      std::optional<Section> s = ParseSection(name);
      if (!s) {
        Error(line, absl::StrCat("unknown section [", std::string(name), "]"));
        section_ = Section::kNone;
        skip_section_ = true;
        return;
      }
      section_ = *s;
      skip_section_ = false;
      return;
    }
    if (skip_section_) return;
    switch (section_) {
      case Section::kNone:
        Error(line, "content outside of any section");
        return;
      case Section::kScenario:
      case Section::kProfile:
      case Section::kCampaign:
      case Section::kTopology:
      case Section::kFiles:
        HandleKeyValue(line, content);
        return;
      case Section::kRules:
        HandleRule(line, content);
        return;
      default:
        break;
    }
    absl::StatusOr<std::vector<Token>> tokens = Tokenize(content);
    if (!tokens.ok()) {
      Error(line, tokens.status());
      return;
    }
    switch (section_) {
      case Section::kTraffic:
        HandleTraffic(line, *tokens);
        break;
      case Section::kAccounts:
      case Section::kAttempts:
        HandleCredentials(line, *tokens);
        break;
      case Section::kMutations:
        HandleMutation(line, *tokens);
        break;
      case Section::kVariants:
        HandleVariant(line, *tokens);
        break;
      case Section::kFaults:
        HandleFault(line, *tokens);
        break;
      default:
        break;
    }
  }

  void HandleKeyValue(int line, std::string_view content) {
    size_t eq = content.find('=');
    if (eq == std::string_view::npos) {
      Error(line, "expected 'key = value'");
      return;
    }
    std::string key(Trim(content.substr(0, eq)));
    absl::StatusOr<std::vector<Token>> value =
        Tokenize(Trim(content.substr(eq + 1)));
    if (!value.ok()) {
      Error(line, value.status());
      return;
    }
    if (section_ == Section::kFiles) {
      HandleFile(line, key, *value);
      return;
    }
    std::string section_name = SectionPrefix();
    std::string full = absl::StrCat(section_name, ".", key);
    if (!lines_.keys.emplace(full, line).second) {
      Error(line, absl::StrCat("duplicate key '", key, "' in [",
                               section_name, "]"));
      return;
    }
    const std::vector<Token>& v = *value;
    auto single = [&]() -> std::optional<std::string> {
      if (v.size() != 1) {
        Error(line, absl::StrCat("'", key, "' takes exactly one value"));
        return std::nullopt;
      }
      return v[0].text;
    };
    auto flag = [&](bool& target) {
      std::optional<std::string> s = single();
      if (!s) return;
      std::optional<bool> b = ParseBool(*s);
      if (!b) {
        Error(line, absl::StrCat("'", key, "' expects yes or no"));
        return;
      }
      target = *b;
    };
    Capabilities& caps = sc_.profile.capabilities;

    if (full == "scenario.name") {
      if (auto s = single()) sc_.name = *s;
    } else if (full == "scenario.seed") {
      if (auto s = single()) {
        std::optional<uint64_t> n = ParseNumber<uint64_t>(*s);
        if (!n) {
          Error(line, absl::StrCat("invalid seed '", *s, "'"));
        } else {
          sc_.seed = *n;
        }
      }
    } else if (full == "profile.id") {
      if (auto s = single()) sc_.profile.id = *s;
    } else if (full == "profile.claims") {
      for (const Token& t : v) sc_.profile.claims.insert(t.text);
    } else if (full == "profile.network-layer") {
      flag(caps.network_layer);
    } else if (full == "profile.link-layer") {
      flag(caps.link_layer);
    } else if (full == "profile.integrity") {
      flag(caps.integrity_control);
    } else if (full == "profile.fields") {
      for (const Token& t : v) {
        std::optional<FilterField> f = ParseFilterField(t.text);
        if (!f) {
          Error(line, absl::StrCat("unknown field '", t.text, "'"));
        } else {
          caps.filterable_fields.insert(*f);
        }
      }
    } else if (full == "profile.auth") {
      if (auto s = single()) {
        if (*s == "none") {
          caps.auth_mode = std::nullopt;
        } else if (std::optional<AuthMode> m = ParseAuthMode(*s)) {
          caps.auth_mode = *m;
        } else {
          Error(line, absl::StrCat("auth expects remote, local or none, got '",
                                   *s, "'"));
        }
      }
    } else if (full == "campaign.requirements") {
      for (const Token& t : v) requirement_ids_.push_back(t.text);
    } else if (full == "campaign.budget") {
      if (auto s = single()) {
        if (*s == "unlimited") {
          sc_.budget = kUnlimitedBudget;
        } else if (std::optional<int64_t> n = ParseNumber<int64_t>(*s)) {
          sc_.budget = *n;
        } else {
          Error(line, absl::StrCat("invalid budget '", *s, "'"));
        }
      }
    } else if (full == "topology.external" || full == "topology.internal") {
      std::vector<Address>& hosts = full == "topology.external"
                                        ? sc_.topology.external
                                        : sc_.topology.internal;
      for (const Token& t : v) {
        absl::StatusOr<Address> a = Address::Parse(t.text);
        if (!a.ok()) {
          Error(line, a.status());
        } else {
          hosts.push_back(*a);
        }
      }
    } else if (full == "topology.management") {
      if (auto s = single()) {
        absl::StatusOr<Address> a = Address::Parse(*s);
        if (!a.ok()) {
          Error(line, a.status());
        } else {
          sc_.management = *a;
        }
      }
    } else {
      Error(line, absl::StrCat("unknown key '", key, "' in [", section_name,
                               "]"));
    }
  }

  std::string SectionPrefix() const {
    switch (section_) {
      case Section::kScenario: return "scenario";
      case Section::kProfile: return "profile";
      case Section::kCampaign: return "campaign";
      case Section::kTopology: return "topology";
      default: return "";
    }
  }

  void HandleRule(int line, std::string_view content) {
    absl::StatusOr<FilterRule> rule =
        ParseFilterRule(content, static_cast<int>(sc_.rules.size()));
    if (!rule.ok()) {
      Error(line, rule.status());
      return;
    }
    sc_.rules.push_back(*std::move(rule));
    lines_.rules.push_back(line);
  }

  void HandleTraffic(int line, const std::vector<Token>& tokens) {
    TrafficVariant tv;
    std::set<std::string> seen;
    for (const Token& t : tokens) {
      auto kv = SplitAssignment(t.text);
      if (!kv || !seen.insert(std::string(kv->first)).second) {
        Error(line, absl::StrCat("malformed traffic term '", t.text, "'"));
        return;
      }
      auto [k, val] = *kv;
      if (k == "proto" || k == "ttl") {
        std::optional<uint8_t> n = ParseNumber<uint8_t>(val);
        if (!n) {
          Error(line, absl::StrCat("invalid ", std::string(k), " '",
                                   std::string(val), "'"));
          return;
        }
        (k == "proto" ? tv.proto : tv.ttl) = *n;
      } else if (k == "spoof-src-mac") {
        absl::StatusOr<MacAddress> mac = MacAddress::Parse(val);
        if (!mac.ok()) {
          Error(line, mac.status());
          return;
        }
        tv.spoof_src_mac = *mac;
      } else {
        Error(line, absl::StrCat("unknown traffic term '", t.text, "'"));
        return;
      }
    }
    sc_.traffic.push_back(tv);
  }

  void HandleCredentials(int line, const std::vector<Token>& tokens) {
    if (tokens.size() != 2) {
      Error(line, "expected '<id> <password>'");
      return;
    }
    Credentials c{tokens[0].text, tokens[1].text};
    if (section_ == Section::kAccounts) {
      sc_.accounts.push_back(std::move(c));
      lines_.accounts.push_back(line);
    } else {
      sc_.attempts.push_back(std::move(c));
    }
  }

  void HandleFile(int line, const std::string& id,
                  const std::vector<Token>& value) {
    if (value.size() != 1) {
      Error(line, "expected '<file-id> = \"<content>\"' or hex:<digits>");
      return;
    }
    absl::StatusOr<std::string> data = ParseData(value[0]);
    if (!data.ok()) {
      Error(line, data.status());
      return;
    }
    sc_.files.push_back({id, *std::move(data), std::nullopt});
    lines_.files.push_back(line);
  }

  void HandleMutation(int line, const std::vector<Token>& t) {
    auto number = [&](const Token& tok) -> std::optional<size_t> {
      std::optional<size_t> n = ParseNumber<size_t>(tok.text);
      if (!n || tok.quoted) {
        Error(line, absl::StrCat("invalid number '", tok.text, "'"));
      }
      return n;
    };
    if (t.empty()) return;
    const std::string& op = t[0].text;
    FileEdit edit;
    if (op == "flip" && (t.size() == 3 || t.size() == 4)) {
      std::optional<size_t> off = number(t[2]);
      FlipByte flip;
      if (!off) return;
      flip.offset = *off;
      if (t.size() == 4) {
        std::optional<uint8_t> mask = ParseNumber<uint8_t>(
            std::string_view(t[3].text).starts_with("0x")
                ? std::string_view(t[3].text).substr(2)
                : std::string_view(t[3].text),
            std::string_view(t[3].text).starts_with("0x") ? 16 : 10);
        if (!mask) {
          Error(line, absl::StrCat("invalid mask '", t[3].text, "'"));
          return;
        }
        flip.mask = *mask;
      }
      edit.mutation = flip;
    } else if (op == "splice" && t.size() == 5) {
      std::optional<size_t> off = number(t[2]);
      std::optional<size_t> erase = number(t[3]);
      absl::StatusOr<std::string> data = ParseData(t[4]);
      if (!off || !erase) return;
      if (!data.ok()) {
        Error(line, data.status());
        return;
      }
      edit.mutation = Splice{*off, *erase, *std::move(data)};
    } else if (op == "replace" && t.size() == 3) {
      absl::StatusOr<std::string> data = ParseData(t[2]);
      if (!data.ok()) {
        Error(line, data.status());
        return;
      }
      edit.mutation = ReplaceContent{*std::move(data)};
    } else {
      Error(line,
            "expected 'flip <file> <offset> [mask]', 'splice <file> <offset> "
            "<erase> <data>' or 'replace <file> <data>'");
      return;
    }
    edit.file_id = t[1].text;
    sc_.mutations.push_back(std::move(edit));
    lines_.mutations.push_back(line);
  }

  void HandleVariant(int line, const std::vector<Token>& t) {
    if (t.size() != 4) {
      Error(line, "expected '<requirement> <variant> time=<n> cost=<n>'");
      return;
    }
    ProcedureVariant v;
    v.requirement = t[0].text;
    v.variant_id = t[1].text;
    std::optional<int64_t> time, cost;
    for (const Token& term : {t[2], t[3]}) {
      auto kv = SplitAssignment(term.text);
      std::optional<int64_t> n =
          kv ? ParseNumber<int64_t>(kv->second) : std::nullopt;
      if (kv && kv->first == "time" && n && !time) {
        time = n;
      } else if (kv && kv->first == "cost" && n && !cost) {
        cost = n;
      } else {
        Error(line, absl::StrCat("malformed variant term '", term.text, "'"));
        return;
      }
    }
    if (*time < 0 || *cost < 0) {
      Error(line, "time and cost must be nonnegative");
      return;
    }
    v.time = *time;
    v.cost = *cost;
    lines_.variants.emplace(v.requirement, line);
    std::vector<ProcedureVariant>& list = sc_.variants[v.requirement];
    for (const ProcedureVariant& other : list) {
      if (other.variant_id == v.variant_id) {
        Error(line, absl::StrCat("duplicate variant '", v.variant_id,
                                 "' for ", v.requirement));
        return;
      }
    }
    list.push_back(std::move(v));
  }

  void HandleFault(int line, const std::vector<Token>& t) {
    if (t.size() != 1) {
      Error(line, "expected one fault per line");
      return;
    }
    absl::StatusOr<FaultKind> fault = ParseFault(t[0].text);
    if (!fault.ok()) {
      Error(line, fault.status());
      return;
    }
    sc_.faults.push_back(*fault);
    lines_.faults.push_back(line);
  }

  // Resolves R once all sections are read.
  void Finish() {
    std::vector<std::string> ids = requirement_ids_;
    if (ids.empty()) {
      ids.assign(sc_.profile.claims.begin(), sc_.profile.claims.end());
    }
    int line = lines_.Key("campaign.requirements");
    if (line == 0) line = lines_.Key("profile.claims");
    for (const std::string& id : ids) {
      std::optional<Requirement> r = FindBuiltinRequirement(id);
      if (!r) {
        Error(line, absl::StrCat("unknown requirement '", id, "'"));
      } else {
        sc_.requirements.push_back(*std::move(r));
      }
    }
  }

  Scenario sc_;
  SourceLines lines_;
  std::vector<ScenarioError> errors_;
  std::vector<std::string> requirement_ids_;
  Section section_ = Section::kNone;
  bool skip_section_ = false;
};

}  // namespace

std::string ScenarioError::ToString() const {
  if (line == 0) return message;
  return absl::StrCat("line ", line, ": ", message);
}

ScenarioParse ParseScenario(std::string_view text) {
  return Parser().Run(text);
}

ScenarioParse LoadScenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ScenarioParse out;
    out.errors.push_back({0, absl::StrCat("cannot read ", path)});
    return out;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScenario(buffer.str());
}

std::vector<ScenarioError> ValidateScenario(const Scenario& scenario) {
  return Validator(scenario, nullptr, false).Run();
}

FirewallConfig MakeFirewallConfig(const Scenario& scenario) {
  FirewallConfig config;
  config.rules = scenario.rules;
  config.accounts = scenario.accounts;
  config.auth_mode =
      scenario.profile.capabilities.auth_mode.value_or(AuthMode::kRemote);
  config.management = scenario.management.value_or(Address{});
  config.files = scenario.files;
  config.seed = scenario.seed;
  return config;
}

VariantTable CampaignVariants(const Scenario& scenario) {
  VariantTable table;
  for (const Requirement& r : scenario.requirements) {
    auto it = scenario.variants.find(r.id);
    if (it != scenario.variants.end() && !it->second.empty()) {
      table[r.id] = it->second;
    } else {
      table[r.id] = {ProcedureVariant{r.id, std::string(kDefaultVariantId), 0,
                                      0}};
    }
  }
  return table;
}

}  // namespace fwconform

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

#include "fwconform/report.h"

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fwconform/digest.h"
#include "json.hpp"

namespace fwconform {
namespace {

using nlohmann::json;

// Malformed report content; converted to InvalidArgument at the boundary.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
T Require(const absl::StatusOr<T>& v, std::string_view what) {
  if (!v.ok()) {
    throw SchemaError(absl::StrCat(std::string(what), ": ",
                                   std::string(v.status().message())));
  }
  return *v;
}

template <typename T>
T RequireEnum(std::optional<T> v, const std::string& name) {
  if (!v) throw SchemaError(absl::StrCat("unknown enumerator '", name, "'"));
  return *v;
}

const json& At(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(absl::StrCat("missing field '", key, "'"));
  }
  return j.at(key);
}

// Addresses and packets.

json ToJson(const PacketHeader& h) {
  return {{"tag", h.payload_tag},
          {"src", h.src.ToString()},
          {"dst", h.dst.ToString()},
          {"proto", h.proto},
          {"ttl", h.ttl}};
}

Address AddressFrom(const json& j) {
  return Require(Address::Parse(j.get<std::string>()), "address");
}

PacketHeader HeaderFrom(const json& j) {
  PacketHeader h;
  h.payload_tag = At(j, "tag").get<uint64_t>();
  h.src = AddressFrom(At(j, "src"));
  h.dst = AddressFrom(At(j, "dst"));
  h.proto = At(j, "proto").get<uint8_t>();
  h.ttl = At(j, "ttl").get<uint8_t>();
  return h;
}

json ToJson(const Packet& p) {
  json j = ToJson(p.Header());
  j["segment"] = std::string(SegmentName(p.ingress));
  j["payload"] = HexEncode(p.payload);
  return j;
}

Packet PacketFrom(const json& j) {
  PacketHeader h = HeaderFrom(j);
  Packet p;
  p.src = h.src;
  p.dst = h.dst;
  p.proto = h.proto;
  p.ttl = h.ttl;
  p.payload_tag = h.payload_tag;
  p.ingress =
      RequireEnum(ParseSegment(At(j, "segment").get<std::string>()),
                  At(j, "segment").get<std::string>());
  p.payload = Require(HexDecode(At(j, "payload").get<std::string>()),
                      "payload");
  return p;
}

template <typename T, typename F>
json ListToJson(const std::vector<T>& items, F&& f) {
  json out = json::array();
  for (const T& item : items) out.push_back(f(item));
  return out;
}

template <typename T, typename F>
std::vector<T> ListFrom(const json& j, F&& f) {
  if (!j.is_array()) throw SchemaError("expected an array");
  std::vector<T> out;
  for (const json& item : j) out.push_back(f(item));
  return out;
}

json ToJson(const JournalEntry& e) {
  json j = {{"seq", e.seq},
            {"event", std::string(JournalEventName(e.event))},
            {"subject", e.subject}};
  if (e.packet) j["packet"] = ToJson(*e.packet);
  return j;
}

JournalEntry EntryFrom(const json& j) {
  JournalEntry e;
  e.seq = At(j, "seq").get<uint64_t>();
  std::string ev = At(j, "event").get<std::string>();
  e.event = RequireEnum(ParseJournalEvent(ev), ev);
  e.subject = At(j, "subject").get<std::string>();
  if (j.contains("packet")) e.packet = HeaderFrom(j.at("packet"));
  return e;
}

json ToJson(const FilterRule& r) {
  return {{"order", r.order}, {"rule", r.ToString()}};
}

FilterRule RuleFrom(const json& j) {
  return Require(ParseFilterRule(At(j, "rule").get<std::string>(),
                                 At(j, "order").get<int>()),
                 "rule");
}

json ToJson(const Credentials& c) { return {{"id", c.id}, {"pwd", c.pwd}}; }

Credentials CredentialsFrom(const json& j) {
  return {At(j, "id").get<std::string>(), At(j, "pwd").get<std::string>()};
}

json ToJson(const FileArtifact& f) {
  json j = {{"id", f.file_id}, {"content", HexEncode(f.content)}};
  if (f.baseline_digest) j["baseline"] = *f.baseline_digest;
  return j;
}

FileArtifact FileFrom(const json& j) {
  FileArtifact f;
  f.file_id = At(j, "id").get<std::string>();
  f.content = Require(HexDecode(At(j, "content").get<std::string>()),
                      "content");
  if (j.contains("baseline")) f.baseline_digest = j.at("baseline");
  return f;
}

json ToJson(const FileEdit& e) {
  json j = {{"file", e.file_id}};
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, FlipByte>) {
          j["op"] = "flip";
          j["offset"] = m.offset;
          j["mask"] = m.mask;
        } else if constexpr (std::is_same_v<M, Splice>) {
          j["op"] = "splice";
          j["offset"] = m.offset;
          j["erase"] = m.erase;
          j["insert"] = HexEncode(m.insert);
        } else {
          j["op"] = "replace";
          j["content"] = HexEncode(m.content);
        }
      },
      e.mutation);
  return j;
}

FileEdit EditFrom(const json& j) {
  FileEdit e;
  e.file_id = At(j, "file").get<std::string>();
  std::string op = At(j, "op").get<std::string>();
  if (op == "flip") {
    e.mutation = FlipByte{At(j, "offset").get<size_t>(),
                          At(j, "mask").get<uint8_t>()};
  } else if (op == "splice") {
    e.mutation =
        Splice{At(j, "offset").get<size_t>(), At(j, "erase").get<size_t>(),
               Require(HexDecode(At(j, "insert").get<std::string>()), "insert")};
  } else if (op == "replace") {
    e.mutation = ReplaceContent{
        Require(HexDecode(At(j, "content").get<std::string>()), "content")};
  } else {
    throw SchemaError(absl::StrCat("unknown mutation op '", op, "'"));
  }
  return e;
}

json BitMap(const std::map<std::string, bool>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

std::map<std::string, bool> BitMapFrom(const json& j) {
  if (!j.is_object()) throw SchemaError("expected an object");
  std::map<std::string, bool> out;
  for (const auto& [k, v] : j.items()) out[k] = v.get<bool>();
  return out;
}

// Evidence.

json ToJson(const Evidence& evidence) {
  json j;
  if (const auto* f = std::get_if<FilterEvidence>(&evidence)) {
    j["kind"] = "filter";
    j["level"] = std::string(FilterLevelName(f->level));
    j["rules"] = ListToJson(f->rules, [](const auto& r) { return ToJson(r); });
    j["packet_in"] =
        ListToJson(f->packet_in, [](const auto& p) { return ToJson(p); });
    j["packet_out"] =
        ListToJson(f->packet_out, [](const auto& p) { return ToJson(p); });
    j["journal_denied"] =
        ListToJson(f->journal_denied, [](const auto& e) { return ToJson(e); });
    j["journal_allowed"] =
        ListToJson(f->journal_allowed, [](const auto& e) { return ToJson(e); });
    j["steps"] = f->steps;
  } else if (const auto* a = std::get_if<AuthEvidence>(&evidence)) {
    j["kind"] = "auth";
    j["mode"] = std::string(AuthModeName(a->mode));
    j["accounts"] =
        ListToJson(a->accounts, [](const auto& c) { return ToJson(c); });
    j["attempts"] = ListToJson(a->attempts, [](const AttemptResult& r) {
      json t = ToJson(r.attempt);
      t["granted"] = r.granted;
      return t;
    });
    j["captures"] =
        ListToJson(a->captures, [](const auto& p) { return ToJson(p); });
    j["journal"] =
        ListToJson(a->journal, [](const auto& e) { return ToJson(e); });
    j["credential_findings"] =
        ListToJson(a->credential_findings, [](const CredentialFinding& f) {
          json t = {{"tag", f.payload_tag},
                    {"account", f.account},
                    {"field", f.field == CredentialField::kId ? "id" : "pwd"},
                    {"offset", f.offset}};
          if (f.attempt) t["attempt"] = *f.attempt;
          return t;
        });
    j["steps"] = a->steps;
  } else {
    const auto& i = std::get<IntegrityEvidence>(evidence);
    j["kind"] = "integrity";
    j["files"] = ListToJson(i.files, [](const auto& f) { return ToJson(f); });
    j["edits"] = ListToJson(i.edits, [](const auto& e) { return ToJson(e); });
    j["modified"] =
        ListToJson(i.modified, [](const auto& f) { return ToJson(f); });
    j["f_mod"] = BitMap(i.f_mod);
    j["f_int"] = BitMap(i.f_int);
    j["journal"] =
        ListToJson(i.journal, [](const auto& e) { return ToJson(e); });
    j["steps"] = i.steps;
  }
  return j;
}

Evidence EvidenceFrom(const json& j) {
  std::string kind = At(j, "kind").get<std::string>();
  if (kind == "filter") {
    FilterEvidence f;
    std::string level = At(j, "level").get<std::string>();
    f.level = RequireEnum(ParseFilterLevel(level), level);
    f.rules = ListFrom<FilterRule>(At(j, "rules"), RuleFrom);
    f.packet_in = ListFrom<Packet>(At(j, "packet_in"), PacketFrom);
    f.packet_out = ListFrom<Packet>(At(j, "packet_out"), PacketFrom);
    f.journal_denied =
        ListFrom<JournalEntry>(At(j, "journal_denied"), EntryFrom);
    f.journal_allowed =
        ListFrom<JournalEntry>(At(j, "journal_allowed"), EntryFrom);
    f.steps = At(j, "steps").get<std::vector<int>>();
    return f;
  }
  if (kind == "auth") {
    AuthEvidence a;
    std::string mode = At(j, "mode").get<std::string>();
    a.mode = RequireEnum(ParseAuthMode(mode), mode);
    a.accounts = ListFrom<Credentials>(At(j, "accounts"), CredentialsFrom);
    a.attempts = ListFrom<AttemptResult>(At(j, "attempts"), [](const json& t) {
      return AttemptResult{CredentialsFrom(t), At(t, "granted").get<bool>()};
    });
    a.captures = ListFrom<Packet>(At(j, "captures"), PacketFrom);
    a.journal = ListFrom<JournalEntry>(At(j, "journal"), EntryFrom);
    a.credential_findings = ListFrom<CredentialFinding>(
        At(j, "credential_findings"), [](const json& t) {
          CredentialFinding f;
          f.payload_tag = At(t, "tag").get<uint64_t>();
          f.account = At(t, "account").get<std::string>();
          std::string field = At(t, "field").get<std::string>();
          if (field != "id" && field != "pwd") {
            throw SchemaError(absl::StrCat("unknown field '", field, "'"));
          }
          f.field = field == "id" ? CredentialField::kId : CredentialField::kPwd;
          f.offset = At(t, "offset").get<size_t>();
          if (t.contains("attempt")) f.attempt = t.at("attempt").get<size_t>();
          return f;
        });
    a.steps = At(j, "steps").get<std::vector<int>>();
    return a;
  }
  if (kind == "integrity") {
    IntegrityEvidence i;
    i.files = ListFrom<FileArtifact>(At(j, "files"), FileFrom);
    i.edits = ListFrom<FileEdit>(At(j, "edits"), EditFrom);
    i.modified = ListFrom<FileArtifact>(At(j, "modified"), FileFrom);
    i.f_mod = BitMapFrom(At(j, "f_mod"));
    i.f_int = BitMapFrom(At(j, "f_int"));
    i.journal = ListFrom<JournalEntry>(At(j, "journal"), EntryFrom);
    i.steps = At(j, "steps").get<std::vector<int>>();
    return i;
  }
  throw SchemaError(absl::StrCat("unknown evidence kind '", kind, "'"));
}

// Procedures and outcomes.

json ToJson(const TestProcedure& p) {
  json j = {{"id", p.id},
            {"requirement", p.source_requirement},
            {"objective", p.objective},
            {"kind", std::string(ProcedureKindName(p.kind))},
            {"expected", p.expected}};
  if (p.kind == ProcedureKind::kFilter) {
    j["level"] = std::string(FilterLevelName(p.level));
  }
  if (p.kind == ProcedureKind::kAuth) {
    j["auth_mode"] = std::string(AuthModeName(p.auth_mode));
  }
  j["plan"] = ListToJson(p.plan, [](const ProcedureStep& s) {
    return json{{"step", s.number}, {"action", s.action}};
  });
  return j;
}

TestProcedure ProcedureFrom(const json& j) {
  TestProcedure p;
  p.id = At(j, "id").get<std::string>();
  p.source_requirement = At(j, "requirement").get<std::string>();
  p.objective = At(j, "objective").get<std::string>();
  std::string kind = At(j, "kind").get<std::string>();
  p.kind = RequireEnum(ParseProcedureKind(kind), kind);
  p.expected = At(j, "expected").get<std::vector<std::string>>();
  if (j.contains("level")) {
    std::string level = j.at("level").get<std::string>();
    p.level = RequireEnum(ParseFilterLevel(level), level);
  }
  if (j.contains("auth_mode")) {
    std::string mode = j.at("auth_mode").get<std::string>();
    p.auth_mode = RequireEnum(ParseAuthMode(mode), mode);
  }
  p.plan = ListFrom<ProcedureStep>(At(j, "plan"), [](const json& s) {
    return ProcedureStep{At(s, "step").get<int>(),
                         At(s, "action").get<std::string>()};
  });
  return p;
}

json ToJson(const ProcedureOutcome& o) {
  return {{"procedure", o.procedure},
          {"requirement", o.requirement},
          {"f_c", o.f_c},
          {"breakdown", ListToJson(o.breakdown, [](const CriterionResult& c) {
             return json{
                 {"label", c.label}, {"holds", c.holds}, {"detail", c.detail}};
           })}};
}

ProcedureOutcome OutcomeFrom(const json& j) {
  ProcedureOutcome o;
  o.procedure = At(j, "procedure").get<std::string>();
  o.requirement = At(j, "requirement").get<std::string>();
  o.f_c = At(j, "f_c").get<bool>();
  o.breakdown = ListFrom<CriterionResult>(At(j, "breakdown"), [](const json& c) {
    return CriterionResult{At(c, "label").get<std::string>(),
                           At(c, "holds").get<bool>(),
                           At(c, "detail").get<std::string>()};
  });
  return o;
}

json BudgetJson(int64_t budget) {
  if (budget == kUnlimitedBudget) return "unlimited";
  return budget;
}

int64_t BudgetFrom(const json& j) {
  if (j.is_string() && j.get<std::string>() == "unlimited") {
    return kUnlimitedBudget;
  }
  return j.get<int64_t>();
}

json ToJson(const Report& r) {
  json j;
  j["format"] = kReportFormatName;
  j["version"] = kReportSchemaVersion;
  j["metadata"] = {{"tool", r.metadata.tool},
                   {"tool_version", r.metadata.tool_version},
                   {"scenario", r.metadata.scenario},
                   {"seed", r.metadata.seed},
                   {"faults", r.metadata.faults},
                   {"generated_at", r.metadata.generated_at}};
  j["profile"] = r.profile;
  json chosen = json::object();
  for (const auto& [req, v] : r.plan.chosen) {
    chosen[req] = {{"variant", v.variant_id}, {"time", v.time}, {"cost", v.cost}};
  }
  j["plan"] = {{"budget", BudgetJson(r.budget)},
               {"total_time", r.plan.total_time},
               {"total_cost", r.plan.total_cost},
               {"chosen", chosen}};
  j["claims"] = ListToJson(r.claims, [](const ClaimBit& c) {
    return json{{"requirement", c.requirement}, {"f_r", c.f_r}};
  });
  j["procedures"] = ListToJson(r.procedures, [](const ProcedureRecord& p) {
    return json{{"procedure", ToJson(p.procedure)},
                {"variant", p.variant},
                {"evidence", ToJson(p.evidence)},
                {"outcome", ToJson(p.outcome)}};
  });
  j["verdict"] = {
      {"n", r.verdict.n},
      {"sum", r.verdict.sum},
      {"conform", r.verdict.conform},
      {"pairs", ListToJson(r.verdict.pairs, [](const VerdictPair& p) {
         return json{{"procedure", p.procedure},
                     {"requirement", p.requirement},
                     {"f_r", p.f_r},
                     {"f_c", p.f_c}};
       })}};
  return j;
}

Report ReportFrom(const json& j) {
  if (At(j, "format").get<std::string>() != kReportFormatName) {
    throw SchemaError("not a fwconform report");
  }
  if (int v = At(j, "version").get<int>(); v != kReportSchemaVersion) {
    throw SchemaError(absl::StrCat("unsupported report version ", v));
  }
  Report r;
  const json& m = At(j, "metadata");
  r.metadata.tool = At(m, "tool").get<std::string>();
  r.metadata.tool_version = At(m, "tool_version").get<std::string>();
  r.metadata.scenario = At(m, "scenario").get<std::string>();
  r.metadata.seed = At(m, "seed").get<uint64_t>();
  r.metadata.faults = At(m, "faults").get<std::vector<std::string>>();
  r.metadata.generated_at = At(m, "generated_at").get<std::string>();
  r.profile = At(j, "profile").get<std::string>();
  const json& plan = At(j, "plan");
  r.budget = BudgetFrom(At(plan, "budget"));
  r.plan.total_time = At(plan, "total_time").get<int64_t>();
  r.plan.total_cost = At(plan, "total_cost").get<int64_t>();
  for (const auto& [req, v] : At(plan, "chosen").items()) {
    r.plan.chosen[req] = ProcedureVariant{
        req, At(v, "variant").get<std::string>(), At(v, "time").get<int64_t>(),
        At(v, "cost").get<int64_t>()};
  }
  r.claims = ListFrom<ClaimBit>(At(j, "claims"), [](const json& c) {
    return ClaimBit{At(c, "requirement").get<std::string>(),
                    At(c, "f_r").get<bool>()};
  });
  r.procedures =
      ListFrom<ProcedureRecord>(At(j, "procedures"), [](const json& p) {
        return ProcedureRecord{ProcedureFrom(At(p, "procedure")),
                               At(p, "variant").get<std::string>(),
                               EvidenceFrom(At(p, "evidence")),
                               OutcomeFrom(At(p, "outcome"))};
      });
  const json& v = At(j, "verdict");
  r.verdict.n = At(v, "n").get<size_t>();
  r.verdict.sum = At(v, "sum").get<size_t>();
  r.verdict.conform = At(v, "conform").get<bool>();
  r.verdict.pairs = ListFrom<VerdictPair>(At(v, "pairs"), [](const json& p) {
    return VerdictPair{At(p, "procedure").get<std::string>(),
                       At(p, "requirement").get<std::string>(),
                       At(p, "f_r").get<bool>(), At(p, "f_c").get<bool>()};
  });
  return r;
}

std::string Mark(bool holds) { return holds ? "PASS" : "FAIL"; }

}  // namespace

std::string ExportMachine(const Report& report) {
  return ToJson(report).dump(2) + "\n";
}

absl::StatusOr<Report> ImportMachine(std::string_view text) {
  try {
    return ReportFrom(json::parse(text));
  } catch (const SchemaError& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed report: ", e.what()));
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed report: ", e.what()));
  }
}

std::string RenderHuman(const Report& r) {
  std::string out;
  absl::StrAppend(&out, "Conformance report: scenario ", r.metadata.scenario,
                  ", profile ", r.profile, "\n");
  absl::StrAppend(&out, "Generated ", r.metadata.generated_at, " by ",
                  r.metadata.tool, " ", r.metadata.tool_version, ", seed ",
                  r.metadata.seed, "\n");
  if (!r.metadata.faults.empty()) {
    absl::StrAppend(&out, "Injected faults:");
    for (const std::string& f : r.metadata.faults) {
      absl::StrAppend(&out, " ", f);
    }
    absl::StrAppend(&out, "\n");
  }
  absl::StrAppend(&out, "\nPlan: total time ", r.plan.total_time,
                  ", total cost ", r.plan.total_cost, ", budget ",
                  r.budget == kUnlimitedBudget ? std::string("unlimited")
                                               : absl::StrCat(r.budget),
                  "\n");
  for (const auto& [req, v] : r.plan.chosen) {
    absl::StrAppend(&out, "  ", req, ": ", v.variant_id, " (time ", v.time,
                    ", cost ", v.cost, ")\n");
  }
  absl::StrAppend(&out, "\nProcedures:\n");
  size_t passed = 0;
  for (const ProcedureRecord& p : r.procedures) {
    if (p.outcome.f_c) ++passed;
    bool f_r = false;
    for (const ClaimBit& c : r.claims) {
      if (c.requirement == p.outcome.requirement) f_r = c.f_r;
    }
    absl::StrAppend(&out, "  [", Mark(p.outcome.f_c), "] ", p.procedure.id,
                    " (", std::string(ProcedureKindName(p.procedure.kind)));
    if (p.procedure.kind == ProcedureKind::kFilter) {
      absl::StrAppend(&out, ", ",
                      std::string(FilterLevelName(p.procedure.level)));
    }
    absl::StrAppend(&out, ") F_R=", f_r ? 1 : 0, " F_C=", p.outcome.f_c ? 1 : 0,
                    "\n");
    for (const CriterionResult& c : p.outcome.breakdown) {
      absl::StrAppend(&out, "      ", Mark(c.holds), "  ", c.label, "\n");
      if (!c.detail.empty()) {
        absl::StrAppend(&out, "            ", c.detail, "\n");
      }
    }
  }
  absl::StrAppend(&out, "\nVerdict: ", r.verdict.sum, " of ", r.verdict.n,
                  " requirements claimed and confirmed: ",
                  r.verdict.conform ? "CONFORM" : "NONCONFORM", "\n");
  if (passed == r.procedures.size()) {
    absl::StrAppend(&out, "All ", r.procedures.size(),
                    " procedures passed.\n");
  } else {
    absl::StrAppend(&out, r.procedures.size() - passed, " of ",
                    r.procedures.size(), " procedures failed.\n");
  }
  return out;
}

std::string Export(const Report& report, ReportFormat format) {
  return format == ReportFormat::kMachine ? ExportMachine(report)
                                          : RenderHuman(report);
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace fwconform

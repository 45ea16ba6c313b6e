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

#include "fwconform/verdict.h"

#include <algorithm>
#include <iterator>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace fwconform {
namespace {

std::string Render(const PairSet& keys) {
  std::vector<std::string> parts;
  for (const FlowKey& k : keys) parts.push_back(k.ToString());
  return absl::StrCat("{", absl::StrJoin(parts, ", "), "}");
}

PairSet Minus(const PairSet& a, const PairSet& b) {
  PairSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::inserter(out, out.end()));
  return out;
}

constexpr char kOut[] = "PACKET_OUT";
constexpr char kDropped[] = "PACKET_IN \\ PACKET_OUT";

CriterionResult SetEquation(std::string_view label, std::string_view lhs_name,
                            const PairSet& lhs, std::string_view rhs_name,
                            const PairSet& rhs, std::string note = "") {
  CriterionResult c;
  c.label = std::string(label);
  c.holds = lhs == rhs;
  if (!c.holds) {
    c.detail = absl::StrCat("symmetric difference: only in ",
                            std::string(lhs_name), " ", Render(Minus(lhs, rhs)),
                            ", only in ", std::string(rhs_name), " ",
                            Render(Minus(rhs, lhs)));
  } else {
    c.detail = absl::StrCat("equal, ", lhs.size(), " element(s)");
  }
  if (!note.empty()) absl::StrAppend(&c.detail, "; ", note);
  return c;
}

}  // namespace

KeyDims DimsFor(FilterLevel level, std::span<const FilterRule> rules) {
  KeyDims dims;
  dims.link = level == FilterLevel::kLink;
  for (const FilterRule& r : rules) {
    dims.link = dims.link || r.Constrains(FilterField::kLink);
    dims.proto = dims.proto || r.Constrains(FilterField::kProto);
    dims.ttl = dims.ttl || r.Constrains(FilterField::kTtl);
  }
  return dims;
}

std::string FlowKey::ToString() const {
  std::string out = src.ToString();
  if (src_mac) absl::StrAppend(&out, "/", src_mac->ToString());
  absl::StrAppend(&out, "->", dst.ToString());
  if (dst_mac) absl::StrAppend(&out, "/", dst_mac->ToString());
  if (proto) absl::StrAppend(&out, " proto=", static_cast<unsigned>(*proto));
  if (ttl) absl::StrAppend(&out, " ttl=", static_cast<unsigned>(*ttl));
  return absl::StrCat("(", out, ")");
}

FlowKey KeyOf(const PacketHeader& header, const KeyDims& dims) {
  FlowKey key;
  key.src = header.src.net;
  key.dst = header.dst.net;
  if (dims.link) {
    key.src_mac = header.src.link;
    key.dst_mac = header.dst.link;
  }
  if (dims.proto) key.proto = header.proto;
  if (dims.ttl) key.ttl = header.ttl;
  return key;
}

PairSet Project(std::span<const Packet> packets, const KeyDims& dims) {
  PairSet out;
  for (const Packet& p : packets) out.insert(KeyOf(p.Header(), dims));
  return out;
}

PairSet Project(std::span<const JournalEntry> entries, const KeyDims& dims) {
  PairSet out;
  for (const JournalEntry& e : entries) {
    if (IsFilterEvent(e.event) && e.packet) {
      out.insert(KeyOf(*e.packet, dims));
    }
  }
  return out;
}

PairSet Project(const PairSet& keys, const KeyDims& dims) {
  PairSet out;
  for (const FlowKey& k : keys) {
    FlowKey p = k;
    if (!dims.link) p.src_mac = p.dst_mac = std::nullopt;
    if (!dims.proto) p.proto = std::nullopt;
    if (!dims.ttl) p.ttl = std::nullopt;
    out.insert(p);
  }
  return out;
}

PairSet ProjectRules(std::span<const FilterRule> rules, RuleAction action,
                     std::span<const Packet> domain, const KeyDims& dims) {
  PairSet out;
  for (const Packet& p : domain) {
    if (ModelAction(rules, p.Header()) == action) {
      out.insert(KeyOf(p.Header(), dims));
    }
  }
  return out;
}

PairSet DroppedSet(std::span<const Packet> packet_in,
                   std::span<const Packet> packet_out, const KeyDims& dims) {
  std::set<uint64_t> forwarded;
  for (const Packet& p : packet_out) forwarded.insert(p.payload_tag);
  PairSet out;
  for (const Packet& p : packet_in) {
    if (!forwarded.contains(p.payload_tag)) out.insert(KeyOf(p.Header(), dims));
  }
  return out;
}

absl::StatusOr<ProcedureOutcome> EvaluateFilterCriteria(
    const FilterEvidence& ev, std::string procedure, std::string requirement) {
  if (ev.steps != std::vector<int>{1, 2, 3, 4, 5}) {
    return absl::FailedPreconditionError(absl::StrCat(
        "incomplete evidence: filtering steps executed [",
        absl::StrJoin(ev.steps, ","), "], expected [1,2,3,4,5]"));
  }
  const KeyDims dims = DimsFor(ev.level, ev.rules);
  const PairSet out = Project(std::span<const Packet>(ev.packet_out), dims);
  const PairSet dropped = DroppedSet(ev.packet_in, ev.packet_out, dims);
  const PairSet rule1 =
      ProjectRules(ev.rules, RuleAction::kAllow, ev.packet_in, dims);
  const PairSet rule0 =
      ProjectRules(ev.rules, RuleAction::kDeny, ev.packet_in, dims);
  const PairSet jour1 =
      Project(std::span<const JournalEntry>(ev.journal_allowed), dims);
  const PairSet jour0 =
      Project(std::span<const JournalEntry>(ev.journal_denied), dims);

  size_t uncovered = 0;
  PairSet uncovered_keys;
  for (const Packet& p : ev.packet_in) {
    if (!FirstMatchingRule(ev.rules, p.Header()).has_value()) {
      ++uncovered;
      uncovered_keys.insert(KeyOf(p.Header(), dims));
    }
  }
  std::string default_deny_note;
  if (uncovered > 0) {
    default_deny_note = absl::StrCat(
        uncovered_keys.size(),
        " key(s) matched by no rule counted in RULE0 by default deny: ",
        Render(uncovered_keys));
  }

  std::vector<CriterionResult> breakdown;
  breakdown.push_back(SetEquation(criteria::kFilterOutEqualsAllowRules, kOut,
                                  out, "RULE1", rule1));
  breakdown.push_back(SetEquation(criteria::kFilterDroppedEqualsDenyRules,
                                  kDropped, dropped, "RULE0", rule0,
                                  default_deny_note));
  breakdown.push_back(SetEquation(criteria::kFilterOutEqualsAllowJournal, kOut,
                                  out, "JOUR1", jour1));
  breakdown.push_back(SetEquation(criteria::kFilterDroppedEqualsDenyJournal,
                                  kDropped, dropped, "JOUR0", jour0));
  return MakeOutcome(std::move(procedure), std::move(requirement),
                     std::move(breakdown));
}

absl::StatusOr<ProcedureOutcome> EvaluateAuthCriteria(
    const AuthEvidence& ev, std::string procedure, std::string requirement) {
  if (ev.attempts.empty()) {
    return absl::InvalidArgumentError("authentication evidence has no attempts");
  }
  std::set<Credentials> adm(ev.accounts.begin(), ev.accounts.end());

  std::vector<std::string> denied_registered;
  std::vector<std::string> granted_unregistered;
  for (size_t i = 0; i < ev.attempts.size(); ++i) {
    const AttemptResult& a = ev.attempts[i];
    bool in_adm = adm.contains(a.attempt);
    std::string tag = absl::StrCat("#", i, " (", a.attempt.id, ")");
    if (in_adm && !a.granted) denied_registered.push_back(tag);
    if (!in_adm && a.granted) granted_unregistered.push_back(tag);
  }

  std::vector<CriterionResult> breakdown;
  {
    CriterionResult c{std::string(criteria::kAuthRegisteredGranted),
                      denied_registered.empty(), ""};
    c.detail = c.holds ? "every registered pair was granted access"
                       : absl::StrCat("registered pair denied at attempt ",
                                      absl::StrJoin(denied_registered, ", "));
    breakdown.push_back(std::move(c));
  }
  {
    CriterionResult c{std::string(criteria::kAuthUnregisteredDenied),
                      granted_unregistered.empty(), ""};
    c.detail =
        c.holds ? "every unregistered id or invalid password was denied"
                : absl::StrCat("access granted outside ADM at attempt ",
                               absl::StrJoin(granted_unregistered, ", "));
    breakdown.push_back(std::move(c));
  }
  {
    std::vector<const JournalEntry*> entries;
    for (const JournalEntry& e : ev.journal) {
      if (IsAuthEvent(e.event)) entries.push_back(&e);
    }
    CriterionResult c{std::string(criteria::kAuthJournalComplete), true, ""};
    if (entries.size() != ev.attempts.size()) {
      c.holds = false;
      c.detail = absl::StrCat("journal has ", entries.size(),
                              " authentication entries for ",
                              ev.attempts.size(), " attempts");
    } else {
      for (size_t i = 0; i < entries.size(); ++i) {
        const AttemptResult& a = ev.attempts[i];
        JournalEvent want = a.granted ? JournalEvent::kAuthAccepted
                                      : JournalEvent::kAuthRejected;
        if (entries[i]->subject != a.attempt.id || entries[i]->event != want) {
          c.holds = false;
          c.detail = absl::StrCat(
              "entry seq ", entries[i]->seq, " (",
              std::string(JournalEventName(entries[i]->event)), " ",
              entries[i]->subject, ") does not record attempt #", i, " (",
              a.attempt.id, ")");
          break;
        }
      }
      if (c.holds) {
        c.detail = absl::StrCat(entries.size(), " entries, one per attempt");
      }
    }
    breakdown.push_back(std::move(c));
  }
  {
    std::vector<CredentialFinding> rescan =
        ScanForPlaintextCredentials(ev.captures, ev.accounts);
    const std::vector<CredentialFinding>& findings =
        ev.credential_findings.empty() ? rescan : ev.credential_findings;
    CriterionResult c{std::string(criteria::kAuthNoPlaintextCredentials),
                      findings.empty() && rescan.empty(), ""};
    if (c.holds) {
      c.detail = absl::StrCat("no identifier or password in ",
                              ev.captures.size(), " captured packet(s)");
    } else {
      std::vector<std::string> parts;
      for (const CredentialFinding& f : findings) {
        parts.push_back(absl::StrCat(
            f.field == CredentialField::kId ? "id" : "pwd", " of ", f.account,
            " in packet #", f.payload_tag,
            f.attempt ? absl::StrCat(" (attempt #", *f.attempt, ")") : ""));
      }
      c.detail = absl::StrCat(findings.size(), " finding(s): ",
                              absl::StrJoin(parts, "; "));
    }
    breakdown.push_back(std::move(c));
  }
  return MakeOutcome(std::move(procedure), std::move(requirement),
                     std::move(breakdown));
}

ProcedureOutcome EvaluateIntegrityCriteria(const IntegrityEvidence& ev,
                                           std::string procedure,
                                           std::string requirement) {
  std::vector<std::string> missed, false_alarms, undefined;
  for (const FileArtifact& file : ev.files) {
    auto mod = ev.f_mod.find(file.file_id);
    auto det = ev.f_int.find(file.file_id);
    if (mod == ev.f_mod.end() || det == ev.f_int.end()) {
      undefined.push_back(file.file_id);
    } else if (mod->second && !det->second) {
      missed.push_back(file.file_id);
    } else if (!mod->second && det->second) {
      false_alarms.push_back(file.file_id);
    }
  }
  CriterionResult c{std::string(criteria::kIntegrityDetectionMatches),
                    missed.empty() && false_alarms.empty() && undefined.empty(),
                    ""};
  if (c.holds) {
    c.detail = absl::StrCat(ev.files.size(), " file(s), ", ev.modified.size(),
                            " modified, all modifications detected");
  } else {
    std::vector<std::string> parts;
    if (!missed.empty()) {
      parts.push_back(
          absl::StrCat("missed violation: ", absl::StrJoin(missed, ", ")));
    }
    if (!false_alarms.empty()) {
      parts.push_back(
          absl::StrCat("false alarm: ", absl::StrJoin(false_alarms, ", ")));
    }
    if (!undefined.empty()) {
      parts.push_back(
          absl::StrCat("no F_MOD/F_INT bit: ", absl::StrJoin(undefined, ", ")));
    }
    c.detail = absl::StrJoin(parts, "; ");
  }
  return MakeOutcome(std::move(procedure), std::move(requirement), {c});
}

absl::StatusOr<ProcedureOutcome> EvaluateEvidence(const Evidence& evidence,
                                                  std::string procedure,
                                                  std::string requirement) {
  if (const auto* f = std::get_if<FilterEvidence>(&evidence)) {
    return EvaluateFilterCriteria(*f, std::move(procedure),
                                  std::move(requirement));
  }
  if (const auto* a = std::get_if<AuthEvidence>(&evidence)) {
    return EvaluateAuthCriteria(*a, std::move(procedure),
                                std::move(requirement));
  }
  return EvaluateIntegrityCriteria(std::get<IntegrityEvidence>(evidence),
                                   std::move(procedure),
                                   std::move(requirement));
}

}  // namespace fwconform

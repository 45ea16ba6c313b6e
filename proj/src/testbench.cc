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

#include "fwconform/testbench.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"

namespace fwconform {
namespace {

bool HasHost(const std::vector<Address>& hosts, Ipv4Address net) {
  return std::any_of(hosts.begin(), hosts.end(),
                     [&](const Address& a) { return a.net == net; });
}

const Address* FindHost(const std::vector<Address>& hosts, Ipv4Address net) {
  for (const Address& a : hosts) {
    if (a.net == net) return &a;
  }
  return nullptr;
}

}  // namespace

absl::Status CheckRuleSet(const Testbench& bench,
                          std::span<const FilterRule> rules, FilterLevel level) {
  for (const FilterRule& rule : rules) {
    if (rule.src.IsExact() &&
        !HasHost(bench.external_hosts(), rule.src.prefix)) {
      return absl::InvalidArgumentError(
          absl::StrCat("rule '", rule.ToString(), "': source ",
                       rule.src.prefix.ToString(),
                       " is not an external host"));
    }
    if (rule.dst.IsExact() &&
        !HasHost(bench.internal_hosts(), rule.dst.prefix)) {
      return absl::InvalidArgumentError(
          absl::StrCat("rule '", rule.ToString(), "': destination ",
                       rule.dst.prefix.ToString(),
                       " is not an internal host"));
    }
  }
  if (level == FilterLevel::kLink) {
    bool any = false;
    for (const FilterRule& rule : rules) {
      if (!rule.Constrains(FilterField::kLink)) continue;
      any = true;
      for (const auto& [pattern, hosts] :
           {std::pair{rule.src, &bench.external_hosts()},
            std::pair{rule.dst, &bench.internal_hosts()}}) {
        if (!pattern.IsExact()) continue;
        const Address* host = FindHost(*hosts, pattern.prefix);
        if (host != nullptr && !host->link.has_value()) {
          return absl::FailedPreconditionError(absl::StrCat(
              "inapplicable rule '", rule.ToString(), "': host ",
              host->net.ToString(), " has no MAC address"));
        }
      }
    }
    if (!any) {
      return absl::FailedPreconditionError(
          "inapplicable rule set: link-level run needs a MAC-constrained rule");
    }
  }
  if (level == FilterLevel::kFields) {
    bool any = std::any_of(rules.begin(), rules.end(), [](const FilterRule& r) {
      return r.Constrains(FilterField::kProto) ||
             r.Constrains(FilterField::kTtl);
    });
    if (!any) {
      return absl::FailedPreconditionError(
          "inapplicable rule set: field-level run needs a proto or ttl "
          "constraint");
    }
  }
  return absl::OkStatus();
}

namespace {

MacAddress SpoofMac(const Testbench& bench) {
  std::set<MacAddress> used;
  for (const auto* hosts : {&bench.external_hosts(), &bench.internal_hosts()}) {
    for (const Address& a : *hosts) {
      if (a.link) used.insert(*a.link);
    }
  }
  uint64_t candidate = 0x02'FF'FF'FF'FF'FEull;
  while (used.contains(MacAddress(candidate))) --candidate;
  return MacAddress(candidate);
}

std::vector<JournalEntry> AuthEntries(std::vector<JournalEntry> entries) {
  std::erase_if(entries,
                [](const JournalEntry& e) { return !IsAuthEvent(e.event); });
  return entries;
}

}  // namespace

absl::StatusOr<Testbench> Testbench::Create(Topology topology, Firewall fw) {
  if (topology.external.empty() || topology.internal.empty()) {
    return absl::InvalidArgumentError(
        "empty segment: the bench needs at least one external and one "
        "internal host");
  }
  std::set<Ipv4Address> external;
  for (const Address& a : topology.external) {
    if (!external.insert(a.net).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate external host ", a.net.ToString()));
    }
  }
  std::set<Ipv4Address> internal;
  for (const Address& a : topology.internal) {
    if (external.contains(a.net)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "overlapping segments: ", a.net.ToString(), " is on both sides"));
    }
    if (!internal.insert(a.net).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate internal host ", a.net.ToString()));
    }
  }
  return Testbench(std::move(topology), std::move(fw));
}

std::vector<Packet> Testbench::GeneratePackets(
    const std::optional<std::vector<HostPair>>& pairs,
    std::span<const TrafficVariant> variants) {
  std::vector<HostPair> product;
  if (!pairs.has_value()) {
    for (const Address& src : topology_.external) {
      for (const Address& dst : topology_.internal) {
        product.push_back({src, dst});
      }
    }
  }
  const std::vector<HostPair>& targets = pairs ? *pairs : product;
  static const TrafficVariant kDefault{};
  if (variants.empty()) variants = std::span<const TrafficVariant>(&kDefault, 1);

  std::vector<Packet> sent;
  for (const TrafficVariant& variant : variants) {
    for (const HostPair& pair : targets) {
      Packet p;
      p.src = pair.src;
      if (variant.spoof_src_mac) p.src.link = variant.spoof_src_mac;
      p.dst = pair.dst;
      p.proto = variant.proto;
      p.ttl = variant.ttl;
      p.payload_tag = NextPayloadTag();
      p.ingress = Segment::kExternal;
      p.payload = absl::StrCat("seq=", p.payload_tag);
      external_tap_.Record(p);
      if (fw_.Filter(p) == FilterDecision::kForwarded) internal_tap_.Record(p);
      sent.push_back(std::move(p));
    }
  }
  return sent;
}

Packet Testbench::EmitInternal(Packet packet) {
  packet.payload_tag = NextPayloadTag();
  packet.ingress = Segment::kInternal;
  internal_tap_.Record(packet);
  return packet;
}

absl::StatusOr<FilterEvidence> RunFilterProcedure(
    Testbench& bench, std::vector<FilterRule> rules, FilterLevel level,
    std::vector<TrafficVariant> traffic) {
  FilterEvidence ev;
  ev.level = level;

  // 1. Rule adjustment.
  if (absl::Status s = CheckRuleSet(bench, rules, level); !s.ok()) {
    return s;
  }
  if (absl::Status s = bench.firewall().ConfigureRules(std::move(rules));
      !s.ok()) {
    return s;
  }
  ev.rules = bench.firewall().rules();
  const uint64_t mark = bench.firewall().journal().next_seq();
  ev.steps.push_back(1);

  // 2. Capture start on both segments.
  for (Segment segment : {Segment::kExternal, Segment::kInternal}) {
    bench.tap(segment).Clear();
    bench.tap(segment).Start();
  }
  ev.steps.push_back(2);

  // 3. Generation.
  if (traffic.empty()) traffic.push_back(TrafficVariant{});
  if (level == FilterLevel::kLink) {
    const MacAddress spoof = SpoofMac(bench);
    size_t base = traffic.size();
    for (size_t i = 0; i < base; ++i) {
      TrafficVariant spoofed = traffic[i];
      spoofed.spoof_src_mac = spoof;
      traffic.push_back(spoofed);
    }
  }
  bench.GeneratePackets(std::nullopt, traffic);
  ev.steps.push_back(3);

  // 4. Capture stop.
  for (Segment segment : {Segment::kExternal, Segment::kInternal}) {
    bench.tap(segment).Stop();
  }
  ev.packet_in = bench.tap(Segment::kExternal).packets();
  ev.packet_out = bench.tap(Segment::kInternal).packets();
  ev.steps.push_back(4);

  // 5. Journal export.
  JournalExport exported =
      PartitionJournal(bench.firewall().journal().Since(mark));
  ev.journal_denied = std::move(exported.denied);
  ev.journal_allowed = std::move(exported.allowed);
  ev.steps.push_back(5);
  return ev;
}

absl::StatusOr<std::vector<Credentials>> CanonicalAttempts(
    std::span<const AdminAccount> accounts) {
  if (accounts.empty()) {
    return absl::FailedPreconditionError(
        "insufficient attempt coverage: ADM is empty");
  }
  std::set<std::string> ids;
  std::set<std::string> pwds;
  for (const AdminAccount& a : accounts) {
    ids.insert(a.id);
    pwds.insert(a.pwd);
  }
  std::string unknown_id = "unregistered";
  for (int i = 1; ids.contains(unknown_id); ++i) {
    unknown_id = absl::StrCat("unregistered", i);
  }
  std::string wrong_pwd = "wrong-password";
  for (int i = 1; pwds.contains(wrong_pwd); ++i) {
    wrong_pwd = absl::StrCat("wrong-password", i);
  }
  const AdminAccount& valid = accounts.front();
  return std::vector<Credentials>{
      {valid.id, valid.pwd},
      {valid.id, wrong_pwd},
      {unknown_id, valid.pwd},
      {unknown_id, wrong_pwd},
  };
}

absl::StatusOr<std::vector<Credentials>> DefaultAttempts(
    std::span<const AdminAccount> accounts) {
  absl::StatusOr<std::vector<Credentials>> attempts =
      CanonicalAttempts(accounts);
  if (!attempts.ok()) return attempts.status();
  attempts->push_back(attempts->front());
  return attempts;
}

std::vector<CredentialFinding> ScanForPlaintextCredentials(
    std::span<const Packet> captures, std::span<const AdminAccount> accounts) {
  std::vector<CredentialFinding> findings;
  for (const Packet& packet : captures) {
    for (const AdminAccount& account : accounts) {
      for (CredentialField field : {CredentialField::kId, CredentialField::kPwd}) {
        const std::string& needle =
            field == CredentialField::kId ? account.id : account.pwd;
        if (needle.empty()) continue;
        for (size_t pos = packet.payload.find(needle);
             pos != std::string::npos;
             pos = packet.payload.find(needle, pos + 1)) {
          findings.push_back(CredentialFinding{packet.payload_tag, std::nullopt,
                                               account.id, field, pos});
        }
      }
    }
  }
  return findings;
}

absl::Status CheckAttemptCoverage(std::span<const AdminAccount> accounts,
                                  std::span<const Credentials> attempts) {
  std::map<std::string, std::string> pwd_of;
  std::set<std::string> pwds;
  for (const AdminAccount& a : accounts) {
    pwd_of[a.id] = a.pwd;
    pwds.insert(a.pwd);
  }
  std::set<std::pair<bool, bool>> covered;
  for (const Credentials& c : attempts) {
    auto it = pwd_of.find(c.id);
    bool registered = it != pwd_of.end();
    bool valid = registered ? it->second == c.pwd : pwds.contains(c.pwd);
    covered.insert({registered, valid});
  }
  if (accounts.empty() || covered.size() < 4) {
    return absl::FailedPreconditionError(absl::StrCat(
        "insufficient attempt coverage: ", covered.size(),
        " of 4 {registered,unregistered} id x {valid,invalid} password "
        "combinations"));
  }
  return absl::OkStatus();
}

absl::StatusOr<AuthEvidence> RunAuthProcedure(Testbench& bench,
                                              std::vector<AdminAccount> accounts,
                                              std::vector<Credentials> attempts,
                                              AuthMode mode) {
  AuthEvidence ev;
  ev.mode = mode;
  const bool remote = mode == AuthMode::kRemote;

  // 1. Activation and ADM registration.
  if (attempts.empty()) {
    absl::StatusOr<std::vector<Credentials>> defaults =
        DefaultAttempts(accounts);
    if (!defaults.ok()) return defaults.status();
    attempts = *std::move(defaults);
  }
  if (absl::Status s = CheckAttemptCoverage(accounts, attempts); !s.ok()) {
    return s;
  }
  if (absl::Status s = bench.firewall().ConfigureAuthentication(accounts, mode);
      !s.ok()) {
    return s;
  }
  ev.accounts = std::move(accounts);
  const uint64_t mark = bench.firewall().journal().next_seq();
  ev.steps.push_back(1);

  // 2. Capture start on the internal segment.
  CaptureTap& tap = bench.tap(Segment::kInternal);
  tap.Clear();
  if (remote) {
    tap.Start();
    ev.steps.push_back(2);
  }

  // 3. Attempts, from the first internal host.
  const Address client = bench.internal_hosts().front();
  std::map<uint64_t, size_t> attempt_of_tag;
  for (size_t i = 0; i < attempts.size(); ++i) {
    AuthResponse response = bench.firewall().Authenticate(attempts[i], client);
    for (Packet& packet : response.exchange) {
      Packet sent = bench.EmitInternal(std::move(packet));
      attempt_of_tag[sent.payload_tag] = i;
    }
    ev.attempts.push_back({attempts[i], response.granted});
  }
  ev.steps.push_back(3);

  // 4. One allowed and one denied probe per the active rule set.
  {
    std::optional<HostPair> allowed, denied;
    for (const Address& src : bench.external_hosts()) {
      for (const Address& dst : bench.internal_hosts()) {
        PacketHeader h{src, dst, kProtoUdp, kDefaultTtl, 0};
        bool allow =
            ModelAction(bench.firewall().rules(), h) == RuleAction::kAllow;
        std::optional<HostPair>& slot = allow ? allowed : denied;
        if (!slot) slot = HostPair{src, dst};
      }
    }
    std::vector<HostPair> probes;
    if (allowed) probes.push_back(*allowed);
    if (denied) probes.push_back(*denied);
    bench.GeneratePackets(probes);
  }
  ev.steps.push_back(4);

  // 5. Capture stop and journal export.
  if (remote) {
    tap.Stop();
    ev.captures = tap.packets();
    ev.steps.push_back(5);
  }
  // The authentication fragment is read in both modes: criterion 3 needs it.
  ev.journal = AuthEntries(bench.firewall().journal().Since(mark));

  // 6. Plaintext credential search.
  ev.credential_findings = ScanForPlaintextCredentials(ev.captures, ev.accounts);
  for (CredentialFinding& finding : ev.credential_findings) {
    auto it = attempt_of_tag.find(finding.payload_tag);
    if (it != attempt_of_tag.end()) finding.attempt = it->second;
  }
  ev.steps.push_back(6);
  return ev;
}

absl::StatusOr<IntegrityEvidence> RunIntegrityProcedure(
    Testbench& bench, std::vector<FileEdit> edits) {
  IntegrityEvidence ev;
  Firewall& fw = bench.firewall();
  for (const FileEdit& edit : edits) {
    bool known = std::any_of(
        fw.files().begin(), fw.files().end(),
        [&](const FileArtifact& f) { return f.file_id == edit.file_id; });
    if (!known) {
      return absl::NotFoundError(
          absl::StrCat("unknown file '", edit.file_id, "'"));
    }
  }

  // 1. Activation and FILE identification.
  if (absl::Status s = fw.ActivateIntegrity(); !s.ok()) return s;
  ev.files = fw.files();
  const uint64_t mark = fw.journal().next_seq();
  ev.steps.push_back(1);

  // 2. Modification. F_MOD is harness ground truth, independent of the
  // firewall's digest.
  for (const FileEdit& edit : edits) {
    absl::StatusOr<FileArtifact> changed =
        fw.ModifyFile(edit.file_id, edit.mutation);
    if (!changed.ok()) return changed.status();
  }
  ev.edits = std::move(edits);
  for (size_t i = 0; i < ev.files.size(); ++i) {
    const FileArtifact& before = ev.files[i];
    const FileArtifact& after = fw.files()[i];
    bool modified = before.content != after.content;
    ev.f_mod[before.file_id] = modified;
    if (modified) ev.modified.push_back(after);
  }
  ev.steps.push_back(2);

  // 3. Integrity check.
  absl::StatusOr<std::map<std::string, bool>> detections =
      fw.RunIntegrityCheck();
  if (!detections.ok()) return detections.status();
  ev.steps.push_back(3);

  // 4. Firewall response.
  ev.f_int = *std::move(detections);
  ev.journal = fw.journal().Since(mark);
  ev.steps.push_back(4);
  return ev;
}

}  // namespace fwconform

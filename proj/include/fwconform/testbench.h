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

#ifndef FWCONFORM_TESTBENCH_H_
#define FWCONFORM_TESTBENCH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fwconform/address.h"
#include "fwconform/firewall.h"
#include "fwconform/formal.h"
#include "fwconform/journal.h"
#include "fwconform/packet.h"
#include "fwconform/rule.h"

namespace fwconform {

// Two network segments separated by the firewall under test.
struct Topology {
  std::vector<Address> external;  // IP_S
  std::vector<Address> internal;  // IP_R

  friend bool operator==(const Topology&, const Topology&) = default;
};

// Header values applied to every generated packet of one traffic pass.
struct TrafficVariant {
  uint8_t proto = kProtoUdp;
  uint8_t ttl = kDefaultTtl;
  // Sends with this source MAC instead of the host's own.
  std::optional<MacAddress> spoof_src_mac;

  friend bool operator==(const TrafficVariant&,
                         const TrafficVariant&) = default;
};

struct HostPair {
  Address src;
  Address dst;
};

// Capture buffer on one segment. Records only while running, in emission
// order.
class CaptureTap {
 public:
  void Start() { running_ = true; }
  void Stop() { running_ = false; }
  void Clear() { packets_.clear(); }
  bool running() const { return running_; }

  void Record(const Packet& packet) {
    if (running_) packets_.push_back(packet);
  }
  const std::vector<Packet>& packets() const { return packets_; }

 private:
  bool running_ = false;
  std::vector<Packet> packets_;
};

class Testbench {
 public:
  // Fails with InvalidArgument on an empty or overlapping segment.
  static absl::StatusOr<Testbench> Create(Topology topology, Firewall fw);

  const std::vector<Address>& external_hosts() const {
    return topology_.external;
  }
  const std::vector<Address>& internal_hosts() const {
    return topology_.internal;
  }
  Firewall& firewall() { return fw_; }
  const Firewall& firewall() const { return fw_; }
  CaptureTap& tap(Segment segment) {
    return segment == Segment::kExternal ? external_tap_ : internal_tap_;
  }
  const CaptureTap& tap(Segment segment) const {
    return segment == Segment::kExternal ? external_tap_ : internal_tap_;
  }

  // Sends one packet per (pair, variant) from the external to the internal
  // segment: recorded at the external tap, offered to the firewall, and
  // recorded at the internal tap if forwarded. Without `pairs`, the full
  // IP_S x IP_R product is used.
  std::vector<Packet> GeneratePackets(
      const std::optional<std::vector<HostPair>>& pairs = std::nullopt,
      std::span<const TrafficVariant> variants = {});

  // Puts a packet on the internal segment without crossing the firewall.
  Packet EmitInternal(Packet packet);

  uint64_t NextPayloadTag() { return next_tag_++; }

 private:
  Testbench(Topology topology, Firewall fw)
      : topology_(std::move(topology)), fw_(std::move(fw)) {}

  Topology topology_;
  Firewall fw_;
  CaptureTap external_tap_;
  CaptureTap internal_tap_;
  uint64_t next_tag_ = 1;
};

// Registered results of the filtering procedure.
struct FilterEvidence {
  FilterLevel level = FilterLevel::kNetwork;
  // RULE^0 and RULE^1 as one ordered list.
  std::vector<FilterRule> rules;
  std::vector<Packet> packet_in;   // external tap
  std::vector<Packet> packet_out;  // internal tap
  std::vector<JournalEntry> journal_denied;   // JOUR^0
  std::vector<JournalEntry> journal_allowed;  // JOUR^1
  // Step numbers in execution order.
  std::vector<int> steps;

  friend bool operator==(const FilterEvidence&,
                         const FilterEvidence&) = default;
};

struct AttemptResult {
  Credentials attempt;
  bool granted = false;  // F_AUT(try)

  friend bool operator==(const AttemptResult&, const AttemptResult&) = default;
};

enum class CredentialField { kId, kPwd };

struct CredentialFinding {
  uint64_t payload_tag = 0;
  // Index into AuthEvidence::attempts when the packet belongs to an attempt.
  std::optional<size_t> attempt;
  std::string account;
  CredentialField field = CredentialField::kPwd;
  size_t offset = 0;

  friend bool operator==(const CredentialFinding&,
                         const CredentialFinding&) = default;
};

struct AuthEvidence {
  AuthMode mode = AuthMode::kRemote;
  std::vector<AdminAccount> accounts;  // ADM
  std::vector<AttemptResult> attempts;
  // Internal-segment capture; empty in local mode.
  std::vector<Packet> captures;
  // Authentication events of the journal fragment.
  std::vector<JournalEntry> journal;
  std::vector<CredentialFinding> credential_findings;
  std::vector<int> steps;

  friend bool operator==(const AuthEvidence&, const AuthEvidence&) = default;
};

struct FileEdit {
  std::string file_id;
  FileMutation mutation;

  friend bool operator==(const FileEdit&, const FileEdit&) = default;
};

struct IntegrityEvidence {
  // FILE as identified at activation, with baseline digests.
  std::vector<FileArtifact> files;
  std::vector<FileEdit> edits;
  // FILE^delta: files whose content differs from the baseline.
  std::vector<FileArtifact> modified;
  std::map<std::string, bool> f_mod;
  std::map<std::string, bool> f_int;
  std::vector<JournalEntry> journal;
  std::vector<int> steps;

  friend bool operator==(const IntegrityEvidence&,
                         const IntegrityEvidence&) = default;
};

// Exact rule addresses must be hosts of the matching segment. Link level
// needs a MAC-constrained rule whose referenced hosts have MACs; field level
// needs a proto or ttl constraint.
absl::Status CheckRuleSet(const Testbench& bench,
                          std::span<const FilterRule> rules, FilterLevel level);

// Runs filtering steps 1-5: configure rules, start both taps, generate the
// traffic, stop the taps, export the journal. Link level adds a
// spoofed-source-MAC pass for every variant.
absl::StatusOr<FilterEvidence> RunFilterProcedure(
    Testbench& bench, std::vector<FilterRule> rules, FilterLevel level,
    std::vector<TrafficVariant> traffic = {TrafficVariant{}});

// The four canonical attempts (valid, bad password, bad id, bad both),
// built from the first account.
absl::StatusOr<std::vector<Credentials>> CanonicalAttempts(
    std::span<const AdminAccount> accounts);
// Canonical attempts plus one repeat of the valid pair.
absl::StatusOr<std::vector<Credentials>> DefaultAttempts(
    std::span<const AdminAccount> accounts);

// FailedPrecondition unless ADM is non-empty and the attempts cover
// {registered, unregistered} id x {valid, invalid} password. For an
// unregistered id, "valid" means the password belongs to some account.
absl::Status CheckAttemptCoverage(std::span<const AdminAccount> accounts,
                                  std::span<const Credentials> attempts);

// Runs authentication steps 1-6 (1, 3, 4, 6 in local mode). Empty
// `attempts` means DefaultAttempts. Fails with FailedPrecondition when the
// attempts do not cover {registered, unregistered} id x {valid, invalid}
// password.
absl::StatusOr<AuthEvidence> RunAuthProcedure(Testbench& bench,
                                              std::vector<AdminAccount> accounts,
                                              std::vector<Credentials> attempts,
                                              AuthMode mode);

// Every occurrence of an account identifier or password inside a captured
// payload.
std::vector<CredentialFinding> ScanForPlaintextCredentials(
    std::span<const Packet> captures, std::span<const AdminAccount> accounts);

// Runs integrity steps 1-4. F_MOD(file) = 1 iff the file's content after
// the edits differs from its content at activation. Fails with NotFound on
// an unknown file id.
absl::StatusOr<IntegrityEvidence> RunIntegrityProcedure(
    Testbench& bench, std::vector<FileEdit> edits);

}  // namespace fwconform

#endif  // FWCONFORM_TESTBENCH_H_

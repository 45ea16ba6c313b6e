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

#ifndef FWCONFORM_VERDICT_H_
#define FWCONFORM_VERDICT_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>

#include "absl/status/statusor.h"
#include "fwconform/formal.h"
#include "fwconform/journal.h"
#include "fwconform/packet.h"
#include "fwconform/rule.h"
#include "fwconform/testbench.h"

namespace fwconform {

// Which header fields besides the address pair take part in the set
// comparisons. A field is included when the run's level or any rule
// constrains it.
struct KeyDims {
  bool link = false;
  bool proto = false;
  bool ttl = false;

  friend bool operator==(const KeyDims&, const KeyDims&) = default;
};

KeyDims DimsFor(FilterLevel level, std::span<const FilterRule> rules);

// Projection of a packet, rule or journal entry onto (IP_S, IP_R) extended
// by the dimensions in KeyDims. Unused dimensions are nullopt.
struct FlowKey {
  Ipv4Address src;
  Ipv4Address dst;
  std::optional<MacAddress> src_mac;
  std::optional<MacAddress> dst_mac;
  std::optional<uint8_t> proto;
  std::optional<uint8_t> ttl;

  std::string ToString() const;
  friend auto operator<=>(const FlowKey&, const FlowKey&) = default;
};

using PairSet = std::set<FlowKey>;

FlowKey KeyOf(const PacketHeader& header, const KeyDims& dims);

PairSet Project(std::span<const Packet> packets, const KeyDims& dims);
// Filter events only; other journal entries are ignored.
PairSet Project(std::span<const JournalEntry> entries, const KeyDims& dims);
// Re-projecting an already projected set under the same dims.
PairSet Project(const PairSet& keys, const KeyDims& dims);

// RULE^action projected over the traffic `domain`: the keys of the domain
// packets whose first matching rule has `action`. With action == kDeny,
// keys matched by no rule are included too (default deny).
PairSet ProjectRules(std::span<const FilterRule> rules, RuleAction action,
                     std::span<const Packet> domain, const KeyDims& dims);

// PACKET_IN \ PACKET_OUT by payload tag, then projected.
PairSet DroppedSet(std::span<const Packet> packet_in,
                   std::span<const Packet> packet_out, const KeyDims& dims);

// The four set equations of the filtering check. Fails with
// FailedPrecondition (incomplete evidence) unless steps 1-5 all ran.
absl::StatusOr<ProcedureOutcome> EvaluateFilterCriteria(
    const FilterEvidence& ev, std::string procedure = "",
    std::string requirement = "");

// Authentication criteria 1-4. Fails with InvalidArgument on an empty
// attempt list.
absl::StatusOr<ProcedureOutcome> EvaluateAuthCriteria(
    const AuthEvidence& ev, std::string procedure = "",
    std::string requirement = "");

// F_INT(file_delta) = F_MOD(file) for every file; a false alarm fails as
// well as a missed violation.
ProcedureOutcome EvaluateIntegrityCriteria(const IntegrityEvidence& ev,
                                           std::string procedure = "",
                                           std::string requirement = "");

using Evidence = std::variant<FilterEvidence, AuthEvidence, IntegrityEvidence>;

absl::StatusOr<ProcedureOutcome> EvaluateEvidence(const Evidence& evidence,
                                                  std::string procedure,
                                                  std::string requirement);

}  // namespace fwconform

#endif  // FWCONFORM_VERDICT_H_

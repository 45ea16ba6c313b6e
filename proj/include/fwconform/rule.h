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

#ifndef FWCONFORM_RULE_H_
#define FWCONFORM_RULE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fwconform/address.h"
#include "fwconform/packet.h"

namespace fwconform {

// rule^1 forwards, rule^0 drops.
enum class RuleAction { kDeny = 0, kAllow = 1 };

std::string_view RuleActionName(RuleAction action);

// Packet attributes beyond the network address pair that a rule may
// constrain. Used by requirement parameters and by the IgnoreField fault.
enum class FilterField { kLink, kProto, kTtl };

std::string_view FilterFieldName(FilterField field);
std::optional<FilterField> ParseFilterField(std::string_view name);

// An IPv4 prefix. prefix_len == 0 matches every address.
struct NetPattern {
  Ipv4Address prefix;
  int prefix_len = 0;

  static NetPattern Any() { return NetPattern{}; }
  static NetPattern Exact(Ipv4Address address) {
    return NetPattern{address, 32};
  }
  // "any", "*", "a.b.c.d" or "a.b.c.d/len".
  static absl::StatusOr<NetPattern> Parse(std::string_view text);

  bool IsAny() const { return prefix_len == 0; }
  bool IsExact() const { return prefix_len == 32; }
  bool Contains(Ipv4Address address) const;
  std::string ToString() const;

  friend bool operator==(const NetPattern&, const NetPattern&) = default;
};

struct TtlRange {
  uint8_t lo = 0;
  uint8_t hi = 255;

  bool Contains(uint8_t ttl) const { return lo <= ttl && ttl <= hi; }
  friend bool operator==(const TtlRange&, const TtlRange&) = default;
};

struct FilterRule {
  RuleAction action = RuleAction::kDeny;
  NetPattern src;
  NetPattern dst;
  std::optional<MacAddress> src_mac;
  std::optional<MacAddress> dst_mac;
  std::optional<uint8_t> proto;
  std::optional<TtlRange> ttl;
  // Position in the rule list; unique within a rule set.
  int order = 0;

  bool Constrains(FilterField field) const;

  // Same token syntax ParseFilterRule accepts, without the order.
  std::string ToString() const;

  friend bool operator==(const FilterRule&, const FilterRule&) = default;
};

// Parses "allow src=192.0.2.1 dst=10.0.0.0/24 src-mac=02:.. proto=6
// ttl=5-255". The keyword may be allow/deny; omitted keys match anything.
absl::StatusOr<FilterRule> ParseFilterRule(std::string_view text, int order);

// Model semantics of an ordered rule set, used to derive expected results:
// index of the first rule (in the given order) whose every constraint holds.
std::optional<size_t> FirstMatchingRule(std::span<const FilterRule> rules,
                                        const PacketHeader& header);
// Action of the first matching rule; kDeny when none matches.
RuleAction ModelAction(std::span<const FilterRule> rules,
                       const PacketHeader& header);

// Checks that orders are unique, then returns the rules sorted by order.
absl::StatusOr<std::vector<FilterRule>> NormalizeRuleSet(
    std::vector<FilterRule> rules);

}  // namespace fwconform

#endif  // FWCONFORM_RULE_H_

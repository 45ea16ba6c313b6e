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

#include "fwconform/rule.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "internal/text_util.h"

namespace fwconform {

std::string_view RuleActionName(RuleAction action) {
  return action == RuleAction::kAllow ? "allow" : "deny";
}

std::string_view FilterFieldName(FilterField field) {
  switch (field) {
    case FilterField::kLink:
      return "link";
    case FilterField::kProto:
      return "proto";
    case FilterField::kTtl:
      return "ttl";
  }
  return "?";
}

std::optional<FilterField> ParseFilterField(std::string_view name) {
  if (name == "link") return FilterField::kLink;
  if (name == "proto") return FilterField::kProto;
  if (name == "ttl") return FilterField::kTtl;
  return std::nullopt;
}

absl::StatusOr<NetPattern> NetPattern::Parse(std::string_view text) {
  if (text == "any" || text == "*") return Any();
  size_t slash = text.find('/');
  absl::StatusOr<Ipv4Address> address = Ipv4Address::Parse(text.substr(0, slash));
  if (!address.ok()) return address.status();
  if (slash == std::string_view::npos) return Exact(*address);
  std::optional<int> len = internal::ParseNumber<int>(text.substr(slash + 1));
  if (!len.has_value() || *len < 0 || *len > 32) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad prefix length in '", std::string(text), "'"));
  }
  uint32_t mask = *len == 0 ? 0 : ~uint32_t{0} << (32 - *len);
  if ((address->value() & ~mask) != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "host bits set in prefix '", std::string(text), "'"));
  }
  return NetPattern{*address, *len};
}

bool NetPattern::Contains(Ipv4Address address) const {
  if (prefix_len <= 0) return true;
  uint32_t mask = prefix_len >= 32 ? ~uint32_t{0}
                                   : ~uint32_t{0} << (32 - prefix_len);
  return (address.value() & mask) == (prefix.value() & mask);
}

std::string NetPattern::ToString() const {
  if (IsAny()) return "any";
  if (IsExact()) return prefix.ToString();
  return absl::StrCat(prefix.ToString(), "/", prefix_len);
}

bool FilterRule::Constrains(FilterField field) const {
  switch (field) {
    case FilterField::kLink:
      return src_mac.has_value() || dst_mac.has_value();
    case FilterField::kProto:
      return proto.has_value();
    case FilterField::kTtl:
      return ttl.has_value();
  }
  return false;
}

std::string FilterRule::ToString() const {
  std::string out = absl::StrCat(std::string(RuleActionName(action)), " src=",
                                 src.ToString(), " dst=", dst.ToString());
  if (src_mac) absl::StrAppend(&out, " src-mac=", src_mac->ToString());
  if (dst_mac) absl::StrAppend(&out, " dst-mac=", dst_mac->ToString());
  if (proto) absl::StrAppend(&out, " proto=", static_cast<unsigned>(*proto));
  if (ttl) absl::StrAppend(&out, " ttl=", static_cast<unsigned>(ttl->lo), "-",
                    static_cast<unsigned>(ttl->hi));
  return out;
}

absl::StatusOr<FilterRule> ParseFilterRule(std::string_view text, int order) {
  std::vector<std::string_view> tokens = internal::SplitWhitespace(text);
  if (tokens.empty()) return absl::InvalidArgumentError("empty rule");
  FilterRule rule;
  rule.order = order;
  if (tokens[0] == "allow") {
    rule.action = RuleAction::kAllow;
  } else if (tokens[0] == "deny") {
    rule.action = RuleAction::kDeny;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "rule must start with allow or deny, got '", std::string(tokens[0]),
        "'"));
  }
  std::set<std::string_view> seen;
  for (size_t i = 1; i < tokens.size(); ++i) {
    std::string_view token = tokens[i];
    size_t eq = token.find('=');
    if (eq == std::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("expected key=value, got '", std::string(token), "'"));
    }
    std::string_view key = token.substr(0, eq);
    std::string_view value = token.substr(eq + 1);
    if (!seen.insert(key).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate key '", std::string(key), "'"));
    }
    if (key == "src" || key == "dst") {
      absl::StatusOr<NetPattern> pattern = NetPattern::Parse(value);
      if (!pattern.ok()) return pattern.status();
      (key == "src" ? rule.src : rule.dst) = *pattern;
    } else if (key == "src-mac" || key == "dst-mac") {
      absl::StatusOr<MacAddress> mac = MacAddress::Parse(value);
      if (!mac.ok()) return mac.status();
      (key == "src-mac" ? rule.src_mac : rule.dst_mac) = *mac;
    } else if (key == "proto") {
      std::optional<unsigned> proto = internal::ParseNumber<unsigned>(value);
      if (!proto.has_value() || *proto > 255) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad proto '", std::string(value), "'"));
      }
      rule.proto = static_cast<uint8_t>(*proto);
    } else if (key == "ttl") {
      size_t dash = value.find('-');
      std::optional<unsigned> lo =
          internal::ParseNumber<unsigned>(value.substr(0, dash));
      std::optional<unsigned> hi =
          dash == std::string_view::npos
              ? lo
              : internal::ParseNumber<unsigned>(value.substr(dash + 1));
      if (!lo || !hi || *lo > 255 || *hi > 255 || *lo > *hi) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad ttl range '", std::string(value), "'"));
      }
      rule.ttl = TtlRange{static_cast<uint8_t>(*lo), static_cast<uint8_t>(*hi)};
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown rule key '", std::string(key), "'"));
    }
  }
  return rule;
}

std::optional<size_t> FirstMatchingRule(std::span<const FilterRule> rules,
                                        const PacketHeader& header) {
  for (size_t i = 0; i < rules.size(); ++i) {
    const FilterRule& r = rules[i];
    bool match = r.src.Contains(header.src.net) &&
                 r.dst.Contains(header.dst.net) &&
                 (!r.src_mac || header.src.link == r.src_mac) &&
                 (!r.dst_mac || header.dst.link == r.dst_mac) &&
                 (!r.proto || header.proto == *r.proto) &&
                 (!r.ttl || r.ttl->Contains(header.ttl));
    if (match) return i;
  }
  return std::nullopt;
}

RuleAction ModelAction(std::span<const FilterRule> rules,
                       const PacketHeader& header) {
  std::optional<size_t> index = FirstMatchingRule(rules, header);
  return index ? rules[*index].action : RuleAction::kDeny;
}

absl::StatusOr<std::vector<FilterRule>> NormalizeRuleSet(
    std::vector<FilterRule> rules) {
  std::set<int> orders;
  for (const FilterRule& rule : rules) {
    if (!orders.insert(rule.order).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate rule order ", rule.order));
    }
  }
  std::stable_sort(rules.begin(), rules.end(),
                   [](const FilterRule& a, const FilterRule& b) {
                     return a.order < b.order;
                   });
  return rules;
}

}  // namespace fwconform

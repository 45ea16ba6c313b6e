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

#include "fwconform/address.h"

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace fwconform {
namespace {

bool ParseUnsigned(std::string_view text, int base, uint32_t max,
                   uint32_t& out) {
  if (text.empty() || text.size() > 3) return false;
  uint32_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc() || ptr != text.data() + text.size()) return false;
  if (value > max) return false;
  out = value;
  return true;
}

std::vector<std::string_view> SplitOn(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

absl::StatusOr<Ipv4Address> Ipv4Address::Parse(std::string_view text) {
  std::vector<std::string_view> parts = SplitOn(text, '.');
  if (parts.size() != 4) {
    return absl::InvalidArgumentError(
        absl::StrCat("not a dotted-quad address: '", std::string(text), "'"));
  }
  uint32_t value = 0;
  for (std::string_view part : parts) {
    uint32_t octet = 0;
    // Leading zeros would make the text form ambiguous.
    if (!ParseUnsigned(part, 10, 255, octet) ||
        (part.size() > 1 && part[0] == '0')) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad octet '", std::string(part), "' in address '",
                       std::string(text), "'"));
    }
    value = (value << 8) | octet;
  }
  return Ipv4Address(value);
}

std::string Ipv4Address::ToString() const {
  return absl::StrFormat("%u.%u.%u.%u", (value_ >> 24) & 0xFF,
                         (value_ >> 16) & 0xFF, (value_ >> 8) & 0xFF,
                         value_ & 0xFF);
}

absl::StatusOr<MacAddress> MacAddress::Parse(std::string_view text) {
  std::vector<std::string_view> parts = SplitOn(text, ':');
  if (parts.size() != 6) {
    return absl::InvalidArgumentError(
        absl::StrCat("not a colon-hex MAC address: '", std::string(text), "'"));
  }
  uint64_t value = 0;
  for (std::string_view part : parts) {
    uint32_t octet = 0;
    if (part.size() != 2 || !ParseUnsigned(part, 16, 255, octet)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad octet '", std::string(part), "' in MAC '",
                       std::string(text), "'"));
    }
    value = (value << 8) | octet;
  }
  return MacAddress(value);
}

std::string MacAddress::ToString() const {
  return absl::StrFormat("%02x:%02x:%02x:%02x:%02x:%02x",
                         (value_ >> 40) & 0xFF, (value_ >> 32) & 0xFF,
                         (value_ >> 24) & 0xFF, (value_ >> 16) & 0xFF,
                         (value_ >> 8) & 0xFF, value_ & 0xFF);
}

absl::StatusOr<Address> Address::Parse(std::string_view text) {
  Address out;
  size_t slash = text.find('/');
  absl::StatusOr<Ipv4Address> net = Ipv4Address::Parse(text.substr(0, slash));
  if (!net.ok()) return net.status();
  out.net = *net;
  if (slash != std::string_view::npos) {
    absl::StatusOr<MacAddress> mac = MacAddress::Parse(text.substr(slash + 1));
    if (!mac.ok()) return mac.status();
    out.link = *mac;
  }
  return out;
}

std::string Address::ToString() const {
  if (!link.has_value()) return net.ToString();
  return absl::StrCat(net.ToString(), "/", link->ToString());
}

}  // namespace fwconform

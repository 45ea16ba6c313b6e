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

#ifndef FWCONFORM_ADDRESS_H_
#define FWCONFORM_ADDRESS_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace fwconform {

// Network-layer (IPv4) address. Rendered as dotted-quad.
class Ipv4Address {
 public:
  constexpr Ipv4Address() = default;
  constexpr explicit Ipv4Address(uint32_t value) : value_(value) {}

  static absl::StatusOr<Ipv4Address> Parse(std::string_view text);

  constexpr uint32_t value() const { return value_; }
  std::string ToString() const;

  friend constexpr auto operator<=>(Ipv4Address, Ipv4Address) = default;

 private:
  uint32_t value_ = 0;
};

// Link-layer (MAC) address, 48 bits. Rendered as lower-case colon-hex.
class MacAddress {
 public:
  constexpr MacAddress() = default;
  constexpr explicit MacAddress(uint64_t value)
      : value_(value & 0xFFFF'FFFF'FFFFull) {}

  static absl::StatusOr<MacAddress> Parse(std::string_view text);

  constexpr uint64_t value() const { return value_; }
  std::string ToString() const;

  friend constexpr auto operator<=>(MacAddress, MacAddress) = default;

 private:
  uint64_t value_ = 0;
};

// A host endpoint: its network address and, when known, its link address.
struct Address {
  Ipv4Address net;
  std::optional<MacAddress> link;

  // "10.0.0.1" or "10.0.0.1/02:00:00:00:00:01".
  static absl::StatusOr<Address> Parse(std::string_view text);
  std::string ToString() const;

  friend auto operator<=>(const Address&, const Address&) = default;
};

}  // namespace fwconform

#endif  // FWCONFORM_ADDRESS_H_

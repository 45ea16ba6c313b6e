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

#ifndef FWCONFORM_PACKET_H_
#define FWCONFORM_PACKET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "fwconform/address.h"

namespace fwconform {

// The two test segments separated by the firewall.
enum class Segment { kExternal, kInternal };

std::string_view SegmentName(Segment segment);
std::optional<Segment> ParseSegment(std::string_view name);

inline constexpr uint8_t kProtoTcp = 6;
inline constexpr uint8_t kProtoUdp = 17;
inline constexpr uint8_t kDefaultTtl = 64;

// Header fields a filtering decision may depend on, plus the payload tag
// that identifies the packet across capture points.
struct PacketHeader {
  Address src;
  Address dst;
  uint8_t proto = kProtoUdp;
  uint8_t ttl = kDefaultTtl;
  uint64_t payload_tag = 0;

  friend auto operator<=>(const PacketHeader&, const PacketHeader&) = default;
};

struct Packet {
  Address src;
  Address dst;
  uint8_t proto = kProtoUdp;
  uint8_t ttl = kDefaultTtl;
  // Unique within one procedure run; embedded in the payload as well.
  uint64_t payload_tag = 0;
  Segment ingress = Segment::kExternal;
  std::string payload;

  PacketHeader Header() const {
    return PacketHeader{src, dst, proto, ttl, payload_tag};
  }

  friend bool operator==(const Packet&, const Packet&) = default;
};

}  // namespace fwconform

#endif  // FWCONFORM_PACKET_H_

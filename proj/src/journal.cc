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

#include "fwconform/journal.h"

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fwconform/packet.h"

namespace fwconform {

std::string_view SegmentName(Segment segment) {
  return segment == Segment::kExternal ? "external" : "internal";
}

std::optional<Segment> ParseSegment(std::string_view name) {
  if (name == "external") return Segment::kExternal;
  if (name == "internal") return Segment::kInternal;
  return std::nullopt;
}

std::string_view JournalEventName(JournalEvent event) {
  switch (event) {
    case JournalEvent::kPassAllowed:
      return "pass-allowed";
    case JournalEvent::kPassDenied:
      return "pass-denied";
    case JournalEvent::kAuthAccepted:
      return "auth-accepted";
    case JournalEvent::kAuthRejected:
      return "auth-rejected";
    case JournalEvent::kIntegrityAlarm:
      return "integrity-alarm";
  }
  return "?";
}

std::optional<JournalEvent> ParseJournalEvent(std::string_view name) {
  for (JournalEvent event :
       {JournalEvent::kPassAllowed, JournalEvent::kPassDenied,
        JournalEvent::kAuthAccepted, JournalEvent::kAuthRejected,
        JournalEvent::kIntegrityAlarm}) {
    if (JournalEventName(event) == name) return event;
  }
  return std::nullopt;
}

bool IsFilterEvent(JournalEvent event) {
  return event == JournalEvent::kPassAllowed ||
         event == JournalEvent::kPassDenied;
}

bool IsAuthEvent(JournalEvent event) {
  return event == JournalEvent::kAuthAccepted ||
         event == JournalEvent::kAuthRejected;
}

const JournalEntry& Journal::Append(JournalEvent event, std::string subject,
                                    std::optional<PacketHeader> packet) {
  entries_.push_back(
      JournalEntry{next_seq_++, event, std::move(subject), std::move(packet)});
  return entries_.back();
}

std::vector<JournalEntry> Journal::Since(uint64_t first_seq) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), first_seq,
      [](const JournalEntry& e, uint64_t seq) { return e.seq < seq; });
  return std::vector<JournalEntry>(it, entries_.end());
}

JournalExport PartitionJournal(std::vector<JournalEntry> entries) {
  JournalExport out;
  for (const JournalEntry& entry : entries) {
    if (entry.event == JournalEvent::kPassAllowed) out.allowed.push_back(entry);
    if (entry.event == JournalEvent::kPassDenied) out.denied.push_back(entry);
  }
  out.entries = std::move(entries);
  return out;
}

}  // namespace fwconform

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

#ifndef FWCONFORM_JOURNAL_H_
#define FWCONFORM_JOURNAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fwconform/packet.h"

namespace fwconform {

enum class JournalEvent {
  kPassAllowed,     // journal^1
  kPassDenied,      // journal^0
  kAuthAccepted,
  kAuthRejected,
  kIntegrityAlarm,
};

std::string_view JournalEventName(JournalEvent event);
std::optional<JournalEvent> ParseJournalEvent(std::string_view name);

bool IsFilterEvent(JournalEvent event);
bool IsAuthEvent(JournalEvent event);

struct JournalEntry {
  uint64_t seq = 0;
  JournalEvent event = JournalEvent::kPassDenied;
  // Administrator identifier for auth events, file id for integrity alarms,
  // "src->dst" for filter events.
  std::string subject;
  // Present for filter events only.
  std::optional<PacketHeader> packet;

  friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

// Append-only event log with a strictly increasing sequence counter.
class Journal {
 public:
  const JournalEntry& Append(JournalEvent event, std::string subject,
                             std::optional<PacketHeader> packet = {});

  std::span<const JournalEntry> entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  // The seq the next appended entry will carry.
  uint64_t next_seq() const { return next_seq_; }

  // Entries with seq >= first_seq, in seq order.
  std::vector<JournalEntry> Since(uint64_t first_seq) const;

 private:
  std::vector<JournalEntry> entries_;
  uint64_t next_seq_ = 1;
};

// Exported log with the filter decisions split into JOUR^0 and JOUR^1.
struct JournalExport {
  std::vector<JournalEntry> entries;
  std::vector<JournalEntry> denied;   // JOUR^0
  std::vector<JournalEntry> allowed;  // JOUR^1

  friend bool operator==(const JournalExport&, const JournalExport&) = default;
};

JournalExport PartitionJournal(std::vector<JournalEntry> entries);

}  // namespace fwconform

#endif  // FWCONFORM_JOURNAL_H_

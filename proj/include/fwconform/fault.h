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

#ifndef FWCONFORM_FAULT_H_
#define FWCONFORM_FAULT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "fwconform/journal.h"
#include "fwconform/rule.h"

namespace fwconform {

// Deliberate deviations from compliant behavior. Each one breaks exactly
// one mechanism of the simulated firewall.

// The k-th rule (by order) acts with the opposite action. The journal still
// records the configured action.
struct InvertRule {
  size_t rule_index = 0;
  friend bool operator==(const InvertRule&, const InvertRule&) = default;
};

// Rule constraints on `field` are treated as always matching.
struct IgnoreField {
  FilterField field = FilterField::kTtl;
  friend bool operator==(const IgnoreField&, const IgnoreField&) = default;
};

// Events of this kind are never written to the journal.
struct SkipJournal {
  JournalEvent event = JournalEvent::kPassDenied;
  friend bool operator==(const SkipJournal&, const SkipJournal&) = default;
};

// A registered identifier is accepted with any password.
struct AcceptAnyPassword {
  friend bool operator==(const AcceptAnyPassword&,
                         const AcceptAnyPassword&) = default;
};

// An unregistered identifier is accepted with any password.
struct AcceptUnknownId {
  friend bool operator==(const AcceptUnknownId&,
                         const AcceptUnknownId&) = default;
};

// No authentication attempt is journaled.
struct OmitAuthJournal {
  friend bool operator==(const OmitAuthJournal&,
                         const OmitAuthJournal&) = default;
};

// The integrity check never reports `file_id` as violated.
struct BlindIntegrity {
  std::string file_id;
  friend bool operator==(const BlindIntegrity&,
                         const BlindIntegrity&) = default;
};

// The remote credential exchange carries identifier and password in clear.
struct LeakCredentialsInCapture {
  friend bool operator==(const LeakCredentialsInCapture&,
                         const LeakCredentialsInCapture&) = default;
};

using FaultKind =
    std::variant<InvertRule, IgnoreField, SkipJournal, AcceptAnyPassword,
                 AcceptUnknownId, OmitAuthJournal, BlindIntegrity,
                 LeakCredentialsInCapture>;

inline constexpr size_t kFaultVariantCount = std::variant_size_v<FaultKind>;

// Textual form used by scenario files and --inject:
//   invert-rule:K  ignore-field:{link,proto,ttl}  skip-journal:EVENT
//   accept-any-password  accept-unknown-id  omit-auth-journal
//   blind-integrity:FILE  leak-credentials
std::string FaultToString(const FaultKind& fault);
absl::StatusOr<FaultKind> ParseFault(std::string_view text);

}  // namespace fwconform

#endif  // FWCONFORM_FAULT_H_

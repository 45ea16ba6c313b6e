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

#include "fwconform/fault.h"

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "internal/text_util.h"

namespace fwconform {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string FaultToString(const FaultKind& fault) {
  return std::visit(
      Overloaded{
          [](const InvertRule& f) {
            return absl::StrCat("invert-rule:", f.rule_index);
          },
          [](const IgnoreField& f) {
            return absl::StrCat("ignore-field:",
                                std::string(FilterFieldName(f.field)));
          },
          [](const SkipJournal& f) {
            return absl::StrCat("skip-journal:",
                                std::string(JournalEventName(f.event)));
          },
          [](const AcceptAnyPassword&) {
            return std::string("accept-any-password");
          },
          [](const AcceptUnknownId&) {
            return std::string("accept-unknown-id");
          },
          [](const OmitAuthJournal&) {
            return std::string("omit-auth-journal");
          },
          [](const BlindIntegrity& f) {
            return absl::StrCat("blind-integrity:", f.file_id);
          },
          [](const LeakCredentialsInCapture&) {
            return std::string("leak-credentials");
          },
      },
      fault);
}

absl::StatusOr<FaultKind> ParseFault(std::string_view text) {
  text = internal::Trim(text);
  size_t colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  std::optional<std::string_view> arg;
  if (colon != std::string_view::npos) arg = text.substr(colon + 1);

  auto bad = [&](std::string_view why) {
    return absl::InvalidArgumentError(absl::StrCat(
        "bad fault '", std::string(text), "': ", std::string(why)));
  };
  auto no_arg = [&](FaultKind fault) -> absl::StatusOr<FaultKind> {
    if (arg.has_value()) return bad("takes no argument");
    return fault;
  };

  if (name == "invert-rule") {
    if (!arg) return bad("missing rule index");
    std::optional<size_t> index = internal::ParseNumber<size_t>(*arg);
    if (!index) return bad("rule index must be a non-negative integer");
    return InvertRule{*index};
  }
  if (name == "ignore-field") {
    if (!arg) return bad("missing field");
    std::optional<FilterField> field = ParseFilterField(*arg);
    if (!field) return bad("field must be link, proto or ttl");
    return IgnoreField{*field};
  }
  if (name == "skip-journal") {
    if (!arg) return bad("missing event");
    std::optional<JournalEvent> event = ParseJournalEvent(*arg);
    if (!event) return bad("unknown journal event");
    return SkipJournal{*event};
  }
  if (name == "blind-integrity") {
    if (!arg || arg->empty()) return bad("missing file id");
    return BlindIntegrity{std::string(*arg)};
  }
  if (name == "accept-any-password") return no_arg(AcceptAnyPassword{});
  if (name == "accept-unknown-id") return no_arg(AcceptUnknownId{});
  if (name == "omit-auth-journal") return no_arg(OmitAuthJournal{});
  if (name == "leak-credentials") return no_arg(LeakCredentialsInCapture{});
  return bad("unknown fault kind");
}

}  // namespace fwconform

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

#include "fwconform/firewall.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fwconform/digest.h"

namespace fwconform {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

absl::Status Inapplicable(const FaultKind& fault, std::string_view why) {
  return absl::FailedPreconditionError(absl::StrCat(
      "inapplicable fault ", FaultToString(fault), ": ", std::string(why)));
}

std::string PairSubject(const Packet& packet) {
  return absl::StrCat(packet.src.net.ToString(), "->",
                      packet.dst.net.ToString());
}

// Opaque stand-in for a sealed channel: carries neither identifier nor
// password bytes.
std::string SealCredentials(std::string_view nonce, const Credentials& c) {
  std::string material(nonce);
  material.append(c.id);
  material.push_back('\0');
  material.append(c.pwd);
  return Sha256(material);
}

}  // namespace

std::string_view AuthModeName(AuthMode mode) {
  return mode == AuthMode::kLocal ? "local" : "remote";
}

std::optional<AuthMode> ParseAuthMode(std::string_view name) {
  if (name == "local") return AuthMode::kLocal;
  if (name == "remote") return AuthMode::kRemote;
  return std::nullopt;
}

absl::StatusOr<std::string> ApplyMutation(const std::string& content,
                                          const FileMutation& mutation) {
  return std::visit(
      Overloaded{
          [&](const FlipByte& m) -> absl::StatusOr<std::string> {
            if (m.offset >= content.size()) {
              return absl::OutOfRangeError(absl::StrCat(
                  "flip offset ", m.offset, " beyond size ", content.size()));
            }
            std::string out = content;
            out[m.offset] = static_cast<char>(
                static_cast<uint8_t>(out[m.offset]) ^ m.mask);
            return out;
          },
          [&](const Splice& m) -> absl::StatusOr<std::string> {
            if (m.offset > content.size() ||
                m.erase > content.size() - m.offset) {
              return absl::OutOfRangeError(
                  absl::StrCat("splice [", m.offset, ", +", m.erase,
                               ") beyond size ", content.size()));
            }
            std::string out = content;
            out.replace(m.offset, m.erase, m.insert);
            return out;
          },
          [&](const ReplaceContent& m) -> absl::StatusOr<std::string> {
            return m.content;
          },
      },
      mutation);
}

absl::StatusOr<Firewall> Firewall::Create(FirewallConfig config) {
  Firewall fw;
  if (absl::Status s = fw.ConfigureRules(std::move(config.rules)); !s.ok()) {
    return s;
  }
  if (absl::Status s = fw.ConfigureAuthentication(std::move(config.accounts),
                                                  config.auth_mode);
      !s.ok()) {
    return s;
  }
  std::set<std::string> file_ids;
  for (const FileArtifact& file : config.files) {
    if (!file_ids.insert(file.file_id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate file id '", file.file_id, "'"));
    }
  }
  fw.management_ = config.management;
  fw.files_ = std::move(config.files);
  for (FileArtifact& file : fw.files_) file.baseline_digest.reset();
  fw.nonce_rng_.seed(config.seed);
  return fw;
}

absl::Status Firewall::ConfigureRules(std::vector<FilterRule> rules) {
  absl::StatusOr<std::vector<FilterRule>> normalized =
      NormalizeRuleSet(std::move(rules));
  if (!normalized.ok()) return normalized.status();
  rules_ = *std::move(normalized);
  return absl::OkStatus();
}

absl::Status Firewall::ConfigureAuthentication(
    std::vector<AdminAccount> accounts, AuthMode mode) {
  std::set<std::string> ids;
  for (const AdminAccount& account : accounts) {
    if (account.id.empty()) {
      return absl::InvalidArgumentError("empty administrator identifier");
    }
    if (!ids.insert(account.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate administrator identifier '", account.id,
                       "'"));
    }
  }
  accounts_ = std::move(accounts);
  auth_mode_ = mode;
  return absl::OkStatus();
}

bool Firewall::RuleMatches(const FilterRule& rule, const Packet& packet) const {
  if (!rule.src.Contains(packet.src.net)) return false;
  if (!rule.dst.Contains(packet.dst.net)) return false;
  if (!ignored_fields_.contains(FilterField::kLink)) {
    if (rule.src_mac && packet.src.link != rule.src_mac) return false;
    if (rule.dst_mac && packet.dst.link != rule.dst_mac) return false;
  }
  if (rule.proto && !ignored_fields_.contains(FilterField::kProto) &&
      packet.proto != *rule.proto) {
    return false;
  }
  if (rule.ttl && !ignored_fields_.contains(FilterField::kTtl) &&
      !rule.ttl->Contains(packet.ttl)) {
    return false;
  }
  return true;
}

void Firewall::Record(JournalEvent event, std::string subject,
                      std::optional<PacketHeader> packet) {
  if (skipped_events_.contains(event)) return;
  journal_.Append(event, std::move(subject), std::move(packet));
}

FilterDecision Firewall::Filter(const Packet& packet) {
  RuleAction logged = RuleAction::kDeny;
  RuleAction action = RuleAction::kDeny;
  for (size_t i = 0; i < rules_.size(); ++i) {
    if (!RuleMatches(rules_[i], packet)) continue;
    logged = action = rules_[i].action;
    if (inverted_rules_.contains(i)) {
      action = action == RuleAction::kAllow ? RuleAction::kDeny
                                            : RuleAction::kAllow;
    }
    break;
  }
  bool forward = action == RuleAction::kAllow;
  Record(logged == RuleAction::kAllow ? JournalEvent::kPassAllowed
                                      : JournalEvent::kPassDenied,
         PairSubject(packet), packet.Header());
  return forward ? FilterDecision::kForwarded : FilterDecision::kDropped;
}

AuthResponse Firewall::Authenticate(const Credentials& attempt,
                                    const Address& client) {
  auto account = std::find_if(
      accounts_.begin(), accounts_.end(),
      [&](const AdminAccount& a) { return a.id == attempt.id; });
  bool granted = false;
  if (account != accounts_.end()) {
    granted = account->pwd == attempt.pwd || accept_any_password_;
  } else {
    granted = accept_unknown_id_;
  }
  Record(granted ? JournalEvent::kAuthAccepted : JournalEvent::kAuthRejected,
         attempt.id);

  AuthResponse response;
  response.granted = granted;
  if (auth_mode_ == AuthMode::kLocal) return response;

  auto make = [&](const Address& src, const Address& dst,
                  std::string payload) {
    return Packet{src,           dst, kProtoTcp, kDefaultTtl, 0,
                  Segment::kInternal, std::move(payload)};
  };
  std::string nonce(16, '\0');
  for (size_t i = 0; i < nonce.size(); i += 8) {
    uint64_t word = nonce_rng_();
    for (size_t b = 0; b < 8; ++b) {
      nonce[i + b] = static_cast<char>((word >> (8 * b)) & 0xFF);
    }
  }
  response.exchange.push_back(
      make(management_, client, std::string("\x01", 1) + nonce));
  if (leak_credentials_) {
    response.exchange.push_back(
        make(client, management_,
             absl::StrCat("LOGIN id=", attempt.id, " pwd=", attempt.pwd)));
  } else {
    response.exchange.push_back(make(
        client, management_,
        std::string("\x02", 1) + SealCredentials(nonce, attempt)));
  }
  response.exchange.push_back(make(
      management_, client, std::string("\x03", 1) + (granted ? "\x01" : "\x00")));
  return response;
}

FileArtifact* Firewall::FindFile(std::string_view file_id) {
  for (FileArtifact& file : files_) {
    if (file.file_id == file_id) return &file;
  }
  return nullptr;
}

absl::Status Firewall::ActivateIntegrity() {
  for (FileArtifact& file : files_) {
    file.baseline_digest = ContentDigest(file.content);
  }
  integrity_active_ = true;
  return absl::OkStatus();
}

absl::StatusOr<FileArtifact> Firewall::ModifyFile(
    std::string_view file_id, const FileMutation& mutation) {
  FileArtifact* file = FindFile(file_id);
  if (file == nullptr) {
    return absl::NotFoundError(
        absl::StrCat("unknown file '", std::string(file_id), "'"));
  }
  absl::StatusOr<std::string> content = ApplyMutation(file->content, mutation);
  if (!content.ok()) return content.status();
  file->content = *std::move(content);
  return *file;
}

absl::StatusOr<std::map<std::string, bool>> Firewall::RunIntegrityCheck() {
  if (!integrity_active_) {
    return absl::FailedPreconditionError(
        "integrity mechanism inactive: no baselines recorded");
  }
  std::map<std::string, bool> result;
  for (const FileArtifact& file : files_) {
    bool violated = ContentDigest(file.content) != *file.baseline_digest &&
                    !blinded_files_.contains(file.file_id);
    result[file.file_id] = violated;
    if (violated) Record(JournalEvent::kIntegrityAlarm, file.file_id);
  }
  return result;
}

JournalExport Firewall::ExportJournal() const {
  return PartitionJournal(
      std::vector<JournalEntry>(journal_.entries().begin(),
                                journal_.entries().end()));
}

absl::StatusOr<Firewall> Firewall::InjectFault(const FaultKind& fault) const {
  Firewall out = *this;
  absl::Status status = std::visit(
      Overloaded{
          [&](const InvertRule& f) -> absl::Status {
            if (f.rule_index >= rules_.size()) {
              return Inapplicable(fault, absl::StrCat("rule set has ",
                                                      rules_.size(), " rules"));
            }
            out.inverted_rules_.insert(f.rule_index);
            return absl::OkStatus();
          },
          [&](const IgnoreField& f) -> absl::Status {
            bool constrained = std::any_of(
                rules_.begin(), rules_.end(),
                [&](const FilterRule& r) { return r.Constrains(f.field); });
            if (!constrained) {
              return Inapplicable(fault, "no rule constrains that field");
            }
            out.ignored_fields_.insert(f.field);
            return absl::OkStatus();
          },
          [&](const SkipJournal& f) -> absl::Status {
            out.skipped_events_.insert(f.event);
            return absl::OkStatus();
          },
          [&](const AcceptAnyPassword&) -> absl::Status {
            if (accounts_.empty()) {
              return Inapplicable(fault, "no registered accounts");
            }
            out.accept_any_password_ = true;
            return absl::OkStatus();
          },
          [&](const AcceptUnknownId&) -> absl::Status {
            out.accept_unknown_id_ = true;
            return absl::OkStatus();
          },
          [&](const OmitAuthJournal&) -> absl::Status {
            out.skipped_events_.insert(JournalEvent::kAuthAccepted);
            out.skipped_events_.insert(JournalEvent::kAuthRejected);
            return absl::OkStatus();
          },
          [&](const BlindIntegrity& f) -> absl::Status {
            bool known = std::any_of(
                files_.begin(), files_.end(),
                [&](const FileArtifact& a) { return a.file_id == f.file_id; });
            if (!known) return Inapplicable(fault, "unknown file");
            out.blinded_files_.insert(f.file_id);
            return absl::OkStatus();
          },
          [&](const LeakCredentialsInCapture&) -> absl::Status {
            if (auth_mode_ != AuthMode::kRemote) {
              return Inapplicable(fault, "authentication is local");
            }
            out.leak_credentials_ = true;
            return absl::OkStatus();
          },
      },
      fault);
  if (!status.ok()) return status;
  out.faults_.push_back(fault);
  return out;
}

}  // namespace fwconform

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

#ifndef FWCONFORM_FIREWALL_H_
#define FWCONFORM_FIREWALL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fwconform/address.h"
#include "fwconform/fault.h"
#include "fwconform/journal.h"
#include "fwconform/packet.h"
#include "fwconform/rule.h"

namespace fwconform {

enum class FilterDecision { kForwarded, kDropped };

// Where the administrator authenticates from. Remote authentication runs
// over the internal segment and is therefore capturable.
enum class AuthMode { kLocal, kRemote };

std::string_view AuthModeName(AuthMode mode);
std::optional<AuthMode> ParseAuthMode(std::string_view name);

// An (identifier, password) pair: both an entry of ADM and an attempt try_i.
struct Credentials {
  std::string id;
  std::string pwd;

  friend auto operator<=>(const Credentials&, const Credentials&) = default;
};

using AdminAccount = Credentials;

struct FileArtifact {
  std::string file_id;
  std::string content;
  // Recorded when the integrity mechanism is activated.
  std::optional<std::string> baseline_digest;

  friend bool operator==(const FileArtifact&, const FileArtifact&) = default;
};

// Byte edits applied to a firewall file.
struct FlipByte {
  size_t offset = 0;
  uint8_t mask = 0xFF;
  friend bool operator==(const FlipByte&, const FlipByte&) = default;
};
struct Splice {
  size_t offset = 0;
  size_t erase = 0;
  std::string insert;
  friend bool operator==(const Splice&, const Splice&) = default;
};
struct ReplaceContent {
  std::string content;
  friend bool operator==(const ReplaceContent&,
                         const ReplaceContent&) = default;
};
using FileMutation = std::variant<FlipByte, Splice, ReplaceContent>;

absl::StatusOr<std::string> ApplyMutation(const std::string& content,
                                          const FileMutation& mutation);

struct FirewallConfig {
  std::vector<FilterRule> rules;
  std::vector<AdminAccount> accounts;
  AuthMode auth_mode = AuthMode::kRemote;
  // Address of the firewall's management interface on the internal segment.
  Address management;
  std::vector<FileArtifact> files;
  // Seeds the challenge nonces of the remote credential exchange.
  uint64_t seed = 0;
};

struct AuthResponse {
  bool granted = false;  // F_AUT(try)
  // Remote mode only: the exchange as seen on the wire. Payload tags are
  // left for the capturing side to assign.
  std::vector<Packet> exchange;
};

// The simulated firewall under test. Single-threaded; copies are
// independent instances.
class Firewall {
 public:
  static absl::StatusOr<Firewall> Create(FirewallConfig config);

  // Replaces the rule set (filtering step 1).
  absl::Status ConfigureRules(std::vector<FilterRule> rules);

  // First matching rule by order decides; no match drops (default deny).
  // Journals the decision.
  FilterDecision Filter(const Packet& packet);

  // Enables administrator authentication with account set ADM.
  absl::Status ConfigureAuthentication(std::vector<AdminAccount> accounts,
                                       AuthMode mode);

  AuthResponse Authenticate(const Credentials& attempt, const Address& client);

  // Records the baseline digest of every file.
  absl::Status ActivateIntegrity();
  absl::StatusOr<FileArtifact> ModifyFile(std::string_view file_id,
                                          const FileMutation& mutation);
  // file_id -> F_INT. Fails with FailedPrecondition before activation.
  absl::StatusOr<std::map<std::string, bool>> RunIntegrityCheck();

  JournalExport ExportJournal() const;
  const Journal& journal() const { return journal_; }

  // Returns a copy that deviates exactly as `fault` specifies.
  absl::StatusOr<Firewall> InjectFault(const FaultKind& fault) const;

  const std::vector<FilterRule>& rules() const { return rules_; }
  const std::vector<AdminAccount>& accounts() const { return accounts_; }
  AuthMode auth_mode() const { return auth_mode_; }
  const Address& management() const { return management_; }
  const std::vector<FileArtifact>& files() const { return files_; }
  const std::vector<FaultKind>& faults() const { return faults_; }
  bool integrity_active() const { return integrity_active_; }

 private:
  Firewall() = default;

  bool RuleMatches(const FilterRule& rule, const Packet& packet) const;
  void Record(JournalEvent event, std::string subject,
              std::optional<PacketHeader> packet = {});
  FileArtifact* FindFile(std::string_view file_id);

  std::vector<FilterRule> rules_;
  std::vector<AdminAccount> accounts_;
  AuthMode auth_mode_ = AuthMode::kRemote;
  Address management_;
  std::vector<FileArtifact> files_;
  bool integrity_active_ = false;
  Journal journal_;
  std::mt19937_64 nonce_rng_;

  std::vector<FaultKind> faults_;
  std::set<size_t> inverted_rules_;
  std::set<FilterField> ignored_fields_;
  std::set<JournalEvent> skipped_events_;
  std::set<std::string> blinded_files_;
  bool accept_any_password_ = false;
  bool accept_unknown_id_ = false;
  bool leak_credentials_ = false;
};

}  // namespace fwconform

#endif  // FWCONFORM_FIREWALL_H_

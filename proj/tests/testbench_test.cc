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

#include "fwconform/testbench.h"

#include <set>
#include <string>
#include <vector>

#include "fwconform/fault.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fwconform {
namespace {

using ::fwconform::testing::Gen;
using ::fwconform::testing::Host;
using ::fwconform::testing::MakeBench;
using ::fwconform::testing::MakeFirewall;
using ::fwconform::testing::Mac;
using ::fwconform::testing::OracleForwards;
using ::fwconform::testing::Rule;
using ::fwconform::testing::Unwrap;

Topology Hosts(std::vector<const char*> ext, std::vector<const char*> in) {
  Topology t;
  for (const char* e : ext) t.external.push_back(Host(e));
  for (const char* i : in) t.internal.push_back(Host(i));
  return t;
}

FirewallConfig AuthConfig(AuthMode mode) {
  FirewallConfig c;
  c.accounts = {{"alice", "pw"}};
  c.auth_mode = mode;
  c.management = Host("10.0.0.254");
  return c;
}

TEST(TestbenchTest, CreateChecksSegments) {
  Testbench b = MakeBench(Hosts({"192.0.2.1", "192.0.2.2"},
                                {"10.0.0.1", "10.0.0.2"}));
  EXPECT_EQ(b.external_hosts().size() + b.internal_hosts().size(), 4u);
  EXPECT_TRUE(b.tap(Segment::kExternal).packets().empty());
  EXPECT_TRUE(b.tap(Segment::kInternal).packets().empty());

  EXPECT_EQ(Testbench::Create(Hosts({"10.0.0.1"}, {"10.0.0.1"}),
                              MakeFirewall())
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(
      Testbench::Create(Hosts({"192.0.2.1"}, {}), MakeFirewall()).ok());
  EXPECT_FALSE(
      Testbench::Create(Hosts({"192.0.2.1", "192.0.2.1"}, {"10.0.0.1"}),
                        MakeFirewall())
          .ok());
}

TEST(TestbenchTest, GeneratesProductWithFreshTags) {
  Testbench b = MakeBench(Hosts({"192.0.2.1", "192.0.2.2"},
                                {"10.0.0.1", "10.0.0.2"}));
  std::vector<Packet> sent = b.GeneratePackets();
  ASSERT_EQ(sent.size(), 4u);
  std::set<uint64_t> tags;
  for (const Packet& p : sent) tags.insert(p.payload_tag);
  EXPECT_EQ(tags.size(), 4u);

  std::vector<Packet> one =
      b.GeneratePackets(std::vector<HostPair>{{Host("192.0.2.1"),
                                               Host("10.0.0.2")}});
  EXPECT_EQ(one.size(), 1u);
}

TEST(TestbenchTest, TapsRecordOnlyWhileRunning) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}));
  b.GeneratePackets();
  EXPECT_TRUE(b.tap(Segment::kExternal).packets().empty());
  b.tap(Segment::kExternal).Start();
  b.GeneratePackets();
  EXPECT_EQ(b.tap(Segment::kExternal).packets().size(), 1u);
}

TEST(FilterProcedureTest, ThreeByThreeForwardsExactlyAllowedPairs) {
  Topology t = Hosts({"192.0.2.1", "192.0.2.2", "192.0.2.3"},
                     {"10.0.0.1", "10.0.0.2", "10.0.0.3"});
  std::vector<FilterRule> rules = {
      Rule("allow src=192.0.2.1 dst=10.0.0.1", 0),
      Rule("allow src=192.0.2.1 dst=10.0.0.2", 1),
      Rule("deny src=192.0.2.2 dst=10.0.0.3", 2),
      Rule("allow src=192.0.2.2 dst=any", 3),
  };
  int expected = 0;
  for (const Address& s : t.external) {
    for (const Address& d : t.internal) {
      expected += OracleForwards(rules, PacketHeader{s, d}) ? 1 : 0;
    }
  }
  ASSERT_EQ(expected, 4);
  Testbench b = MakeBench(t);
  FilterEvidence ev = Unwrap(RunFilterProcedure(b, rules, FilterLevel::kNetwork));
  EXPECT_EQ(ev.packet_in.size(), 9u);
  EXPECT_EQ(ev.packet_out.size(), 4u);
  EXPECT_EQ(ev.steps, (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(ev.journal_allowed.size(), 4u);
  EXPECT_EQ(ev.journal_denied.size(), 5u);
}

TEST(FilterProcedureTest, OneByTwoEvidence) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.2", "10.0.0.3"}));
  FilterEvidence ev = Unwrap(RunFilterProcedure(
      b,
      {Rule("allow src=192.0.2.1 dst=10.0.0.2", 0),
       Rule("deny src=192.0.2.1 dst=10.0.0.3", 1)},
      FilterLevel::kNetwork));
  ASSERT_EQ(ev.packet_out.size(), 1u);
  EXPECT_EQ(ev.packet_out[0].dst, Host("10.0.0.2"));
  ASSERT_EQ(ev.journal_allowed.size(), 1u);
  EXPECT_EQ(ev.journal_allowed[0].subject, "192.0.2.1->10.0.0.2");
  ASSERT_EQ(ev.journal_denied.size(), 1u);
  EXPECT_EQ(ev.journal_denied[0].subject, "192.0.2.1->10.0.0.3");
}

TEST(FilterProcedureTest, TapConservation) {
  Gen gen(5);
  for (int iter = 0; iter < 50; ++iter) {
    Topology t = gen.RandomTopology(4, false);
    Testbench b = MakeBench(t);
    FilterEvidence ev = Unwrap(RunFilterProcedure(
        b, gen.RandomRules(t, 8, false), FilterLevel::kNetwork,
        gen.RandomTraffic()));
    std::set<uint64_t> in;
    for (const Packet& p : ev.packet_in) in.insert(p.payload_tag);
    for (const Packet& p : ev.packet_out) {
      EXPECT_TRUE(in.contains(p.payload_tag));
    }
  }
}

TEST(FilterProcedureTest, LinkLevelDropsSpoofedSource) {
  Topology t = Hosts({"192.0.2.1/02:00:00:00:00:01"},
                     {"10.0.0.1/02:00:00:00:00:02"});
  Testbench b = MakeBench(t);
  FilterEvidence ev = Unwrap(RunFilterProcedure(
      b, {Rule("allow src=192.0.2.1 dst=10.0.0.1 src-mac=02:00:00:00:00:01", 0)},
      FilterLevel::kLink));
  ASSERT_EQ(ev.packet_in.size(), 2u);
  ASSERT_EQ(ev.packet_out.size(), 1u);
  EXPECT_EQ(ev.packet_out[0].src.link, Mac("02:00:00:00:00:01"));
  EXPECT_NE(ev.packet_in[1].src.link, Mac("02:00:00:00:00:01"));
}

TEST(FilterProcedureTest, FieldLevelTtl) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}));
  FilterEvidence ev = Unwrap(RunFilterProcedure(
      b, {Rule("deny ttl=0-4", 0), Rule("allow", 1)}, FilterLevel::kFields,
      {TrafficVariant{kProtoUdp, 1, {}}, TrafficVariant{kProtoUdp, 64, {}}}));
  ASSERT_EQ(ev.packet_out.size(), 1u);
  EXPECT_EQ(ev.packet_out[0].ttl, 64);
}

TEST(FilterProcedureTest, InapplicableRuleSets) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}));
  EXPECT_EQ(RunFilterProcedure(b, {Rule("allow src=192.0.2.9", 0)},
                               FilterLevel::kNetwork)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(RunFilterProcedure(b, {Rule("allow", 0)}, FilterLevel::kLink)
                .status()
                .code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(
      RunFilterProcedure(
          b, {Rule("allow src=192.0.2.1 src-mac=02:00:00:00:00:01", 0)},
          FilterLevel::kLink)
          .ok());
  EXPECT_FALSE(
      RunFilterProcedure(b, {Rule("allow", 0)}, FilterLevel::kFields).ok());
}

TEST(AuthProcedureTest, CanonicalAttemptsRemote) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}),
                          AuthConfig(AuthMode::kRemote));
  std::vector<AdminAccount> adm = {{"alice", "pw"}};
  std::vector<Credentials> attempts = Unwrap(CanonicalAttempts(adm));
  ASSERT_EQ(attempts.size(), 4u);
  AuthEvidence ev =
      Unwrap(RunAuthProcedure(b, adm, attempts, AuthMode::kRemote));
  std::vector<bool> bits;
  for (const AttemptResult& r : ev.attempts) bits.push_back(r.granted);
  EXPECT_EQ(bits, (std::vector<bool>{true, false, false, false}));
  EXPECT_EQ(ev.steps, (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_FALSE(ev.captures.empty());
  EXPECT_TRUE(ev.credential_findings.empty());
  EXPECT_EQ(ev.journal.size(), 4u);
}

TEST(AuthProcedureTest, LocalModeOmitsCapture) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}),
                          AuthConfig(AuthMode::kLocal));
  std::vector<AdminAccount> adm = {{"alice", "pw"}};
  AuthEvidence ev = Unwrap(RunAuthProcedure(
      b, adm, Unwrap(CanonicalAttempts(adm)), AuthMode::kLocal));
  std::vector<bool> bits;
  for (const AttemptResult& r : ev.attempts) bits.push_back(r.granted);
  EXPECT_EQ(bits, (std::vector<bool>{true, false, false, false}));
  EXPECT_EQ(ev.steps, (std::vector<int>{1, 3, 4, 6}));
  EXPECT_TRUE(ev.captures.empty());
  EXPECT_TRUE(ev.credential_findings.empty());
}

TEST(AuthProcedureTest, CoverageRequired) {
  std::vector<AdminAccount> adm = {{"alice", "pw"}};
  EXPECT_EQ(CheckAttemptCoverage({}, {}).code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(CheckAttemptCoverage(adm, std::vector<Credentials>{
                                             {"alice", "pw"}, {"bob", "x"}})
                   .ok());
  FWC_EXPECT_OK(CheckAttemptCoverage(adm, Unwrap(CanonicalAttempts(adm))));
  EXPECT_EQ(Unwrap(DefaultAttempts(adm)).size(), 5u);

  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}),
                          AuthConfig(AuthMode::kRemote));
  EXPECT_FALSE(RunAuthProcedure(b, {}, {}, AuthMode::kRemote).ok());
}

TEST(AuthProcedureTest, LeakYieldsFindingsWithAttemptIndex) {
  Firewall fw = Unwrap(
      MakeFirewall(AuthConfig(AuthMode::kRemote))
          .InjectFault(LeakCredentialsInCapture{}));
  Testbench b = Unwrap(
      Testbench::Create(Hosts({"192.0.2.1"}, {"10.0.0.1"}), std::move(fw)));
  AuthEvidence ev = Unwrap(RunAuthProcedure(b, {{"alice", "pw"}}, {},
                                            AuthMode::kRemote));
  ASSERT_FALSE(ev.credential_findings.empty());
  EXPECT_TRUE(ev.credential_findings[0].attempt.has_value());
}

TEST(ScanTest, FindsSubstrings) {
  std::vector<AdminAccount> adm = {{"alice", "s3cret"}};
  Packet p;
  p.payload_tag = 9;
  p.payload = "user=alice;pass=s3cret";
  std::vector<CredentialFinding> found =
      ScanForPlaintextCredentials(std::vector<Packet>{p}, adm);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_EQ(found[0].field, CredentialField::kId);
  EXPECT_EQ(found[0].offset, 5u);
  EXPECT_EQ(found[1].field, CredentialField::kPwd);
  EXPECT_EQ(found[1].offset, 16u);
  EXPECT_EQ(found[1].payload_tag, 9u);

  p.payload = "only s3cret";
  EXPECT_EQ(ScanForPlaintextCredentials(std::vector<Packet>{p}, adm).size(), 1u);
  EXPECT_TRUE(ScanForPlaintextCredentials({}, adm).empty());
}

FirewallConfig FileConfig() {
  FirewallConfig c;
  c.files = {{"f1", "one", std::nullopt},
             {"f2", "two", std::nullopt},
             {"f3", "three", std::nullopt}};
  return c;
}

TEST(IntegrityProcedureTest, SingleMutation) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}), FileConfig());
  IntegrityEvidence ev =
      Unwrap(RunIntegrityProcedure(b, {{"f1", FlipByte{0, 1}}}));
  EXPECT_EQ(ev.f_mod, (std::map<std::string, bool>{
                          {"f1", true}, {"f2", false}, {"f3", false}}));
  EXPECT_EQ(ev.f_int, ev.f_mod);
  ASSERT_EQ(ev.modified.size(), 1u);
  EXPECT_EQ(ev.modified[0].file_id, "f1");
  EXPECT_EQ(ev.steps, (std::vector<int>{1, 2, 3, 4}));
}

TEST(IntegrityProcedureTest, NoneAndAll) {
  Testbench none = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}), FileConfig());
  IntegrityEvidence ev = Unwrap(RunIntegrityProcedure(none, {}));
  for (const auto& [id, bit] : ev.f_int) EXPECT_FALSE(bit) << id;

  Testbench all = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}), FileConfig());
  ev = Unwrap(RunIntegrityProcedure(
      all, {{"f1", ReplaceContent{"x"}},
            {"f2", Splice{0, 0, "y"}},
            {"f3", FlipByte{4}}}));
  for (const auto& [id, bit] : ev.f_int) EXPECT_TRUE(bit) << id;
}

TEST(IntegrityProcedureTest, NoOpEditIsNotModification) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}), FileConfig());
  IntegrityEvidence ev =
      Unwrap(RunIntegrityProcedure(b, {{"f2", Splice{1, 0, ""}}}));
  EXPECT_FALSE(ev.f_mod.at("f2"));
  EXPECT_TRUE(ev.modified.empty());
  // Edits that cancel out leave the file unmodified as well.
  Testbench c = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}), FileConfig());
  ev = Unwrap(RunIntegrityProcedure(
      c, {{"f1", FlipByte{0, 1}}, {"f1", FlipByte{0, 1}}}));
  EXPECT_FALSE(ev.f_mod.at("f1"));
}

TEST(IntegrityProcedureTest, UnknownFile) {
  Testbench b = MakeBench(Hosts({"192.0.2.1"}, {"10.0.0.1"}), FileConfig());
  EXPECT_EQ(RunIntegrityProcedure(b, {{"nope", FlipByte{}}}).status().code(),
            absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace fwconform

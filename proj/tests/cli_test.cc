// Copyright 2026 The rsibe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "rsibe/codec.h"

namespace rsibe {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("rsibe_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Run(std::vector<std::string> args, const fs::path& dir) const {
    args.insert(args.begin(), {"rsibe", "--workspace", dir.string()});
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }
  Result Run(std::vector<std::string> args) const { return Run(std::move(args), dir_); }

  Result Ok(std::vector<std::string> args) const {
    Result r = Run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return r;
  }

  std::string File(const std::string& name, const fs::path& dir) const {
    std::ifstream in(dir / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::string File(const std::string& name) const { return File(name, dir_); }
  Json Load(const std::string& name) const { return Json::parse(File(name)); }

  fs::path dir_;
};

std::string Bytes(const Json& j) { return j.dump(2) + "\n"; }

TEST_F(CliTest, EqualTimeRoundTrip) {
  Ok({"setup", "--id-bits", "2", "--time-bits", "3"});
  Ok({"keygen", "--id", "01"});
  Ok({"update-key", "--t", "4"});
  Ok({"derive-dk", "--id", "01", "--t", "4"});
  for (const char* variant : {"wei", "naive", "corrected"}) {
    const Result enc = Ok({"--variant", variant, "encrypt", "--id", "01", "--t", "4",
                           "--message-seed", "99", "--name", variant});
    const Result dec = Ok({"decrypt", "--name", variant, "--t", "4"});
    EXPECT_EQ(dec.out, enc.out);
    EXPECT_EQ(enc.out, "message " + MessageHandle(MessageFromSeed(Backend::kMock, 99)) + "\n");
  }
}

TEST_F(CliTest, CurveRoundTrip) {
  Ok({"--backend", "curve", "setup", "--id-bits", "1", "--time-bits", "2"});
  Ok({"keygen", "--id", "1"});
  Ok({"update-key", "--t", "3"});
  Ok({"derive-dk", "--id", "1", "--t", "3"});
  const Result enc = Ok({"--variant", "corrected", "encrypt", "--id", "1", "--t", "1",
                         "--message-seed", "5", "--name", "c"});
  EXPECT_EQ(Ok({"decrypt", "--name", "c", "--t", "3"}).out, enc.out);
  EXPECT_EQ(Load("pp.json")["backend"], "curve");
}

TEST_F(CliTest, ArtifactsMatchDirectLibraryCalls) {
  const std::uint64_t seed = 0xbeef;
  Ok({"--seed", "beef", "setup", "--id-bits", "2", "--time-bits", "3"});
  Randomness setup_rng(seed, "cli.setup");
  auto [mk, pp, st, rl] = rsibe::Setup(128, 4, 8, BackendConfig{}, setup_rng);
  ASSERT_EQ(File("pp.json"), Bytes(ToJson(pp)));
  ASSERT_EQ(File("mk.json"), Bytes(ToJson(mk, pp)));
  ASSERT_EQ(File("state.json"), Bytes(StateToJson(st, rl, pp)));

  Ok({"--seed", "beef", "keygen", "--id", "10"});
  Randomness keygen_rng(seed, "cli.keygen/10");
  const PrivateKey sk = GenKey(Identity::Parse("10"), mk, st, pp, keygen_rng);
  ASSERT_EQ(File("sk.10.json"), Bytes(ToJson(sk, pp)));
  ASSERT_EQ(File("state.json"), Bytes(StateToJson(st, rl, pp)));

  Ok({"--seed", "beef", "update-key", "--t", "6"});
  Randomness ku_rng(seed, "cli.update-key/6");
  const KeyUpdate ku = UpdateKey(TimePeriod{6}, rl, mk, st, pp, ku_rng);
  ASSERT_EQ(File("ku.6.json"), Bytes(ToJson(ku, pp)));
  ASSERT_EQ(File("state.json"), Bytes(StateToJson(st, rl, pp)));

  Ok({"--seed", "beef", "derive-dk", "--id", "10", "--t", "6"});
  Randomness dk_rng(seed, "cli.derive-dk/10/6");
  const DecryptionKey dk = DeriveDk(sk, ku, pp, dk_rng);
  ASSERT_EQ(File("dk.10.6.json"), Bytes(ToJson(dk, pp)));

  Ok({"--seed", "beef", "--variant", "naive", "encrypt", "--id", "10", "--t", "2",
      "--message-seed", "7", "--name", "x"});
  Randomness enc_rng(seed, "cli.encrypt/x");
  const GroupElem m = MessageFromSeed(Backend::kMock, 7);
  const Ciphertext ct =
      Encrypt(sk.id, TimePeriod{2}, m, pp, SchemeVariant::kNaiveSharedS, enc_rng);
  ASSERT_EQ(File("ct.x.json"), Bytes(ToJson(ct, pp)));

  Ok({"--seed", "beef", "--mode", "verbatim", "update-ct", "--name", "x", "--t", "5", "--out",
      "y"});
  Randomness upd_rng(seed, "cli.update-ct/y/5");
  const Ciphertext moved = UpdateCt(ct, TimePeriod{5}, pp, upd_rng, DelegationMode::kVerbatim);
  ASSERT_EQ(File("ct.y.json"), Bytes(ToJson(moved, pp)));

  Ok({"--seed", "beef", "revoke", "--id", "10", "--t", "7"});
  Revoke(sk.id, TimePeriod{7}, rl, st);
  ASSERT_EQ(File("state.json"), Bytes(StateToJson(st, rl, pp)));

  const Result dec = Ok({"--seed", "beef", "decrypt", "--name", "x", "--t", "6"});
  Randomness dec_rng(seed, "cli.decrypt/x/6");
  EXPECT_EQ(dec.out, "message " + MessageHandle(Decrypt(ct, dk, pp, dec_rng)) + "\n");
}

TEST_F(CliTest, SameSeedGivesIdenticalWorkspaces) {
  const fs::path other = dir_.string() + "_twin";
  const std::vector<std::vector<std::string>> script = {
      {"--seed", "12", "setup", "--id-bits", "2", "--time-bits", "2"},
      {"--seed", "12", "keygen", "--id", "11"},
      {"--seed", "12", "update-key", "--t", "1"},
      {"--seed", "12", "derive-dk", "--id", "11", "--t", "1"},
      {"--seed", "12", "encrypt", "--id", "11", "--t", "0", "--name", "a"},
      {"--seed", "12", "update-ct", "--name", "a", "--t", "1"},
  };
  for (const auto& args : script) {
    ASSERT_EQ(Run(args).code, 0);
    ASSERT_EQ(Run(args, other).code, 0);
  }
  for (const char* name : {"pp.json", "mk.json", "state.json", "sk.11.json", "ku.1.json",
                           "dk.11.1.json", "ct.a.json"}) {
    EXPECT_EQ(File(name), File(name, other)) << name;
    EXPECT_FALSE(File(name).empty());
  }
  fs::remove_all(other);
}

TEST_F(CliTest, DecryptWithOlderKeyIsRejected) {
  Ok({"setup", "--id-bits", "1", "--time-bits", "2"});
  Ok({"keygen", "--id", "0"});
  Ok({"update-key", "--t", "1"});
  Ok({"derive-dk", "--id", "0", "--t", "1"});
  Ok({"encrypt", "--id", "0", "--t", "2", "--name", "late"});
  const Result r = Run({"decrypt", "--name", "late", "--t", "1"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("rejected: key predates ciphertext"), std::string::npos);
}

TEST_F(CliTest, DemoFailurePrintsDiagonal) {
  const Result r = Ok({"demo-failure", "--time-bits", "4"});
  EXPECT_NE(r.out.find("recovered 16 wrong 120"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("residual exact 136/136"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), 'R'), 16);
  const Json report = Load("report-failure.json");
  EXPECT_EQ(report["schema"], kSchemaVersion);

  const Result corrected = Ok({"--variant", "corrected", "demo-failure"});
  EXPECT_NE(corrected.out.find("recovered 136 wrong 0"), std::string::npos);
}

TEST_F(CliTest, DemoAttackAndCensus) {
  const Result attack = Ok({"demo-attack", "--trials", "5"});
  EXPECT_NE(attack.out.find("naive: forged 5/5, recovered 5/5"), std::string::npos)
      << attack.out;
  EXPECT_NE(attack.out.find("wei: forged 5/5, recovered 0/5"), std::string::npos);
  EXPECT_NE(attack.out.find("corrected: forged 5/5, recovered 0/5"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "report-attack.json"));

  const Result census = Ok({"census", "--time-bits", "3"});
  EXPECT_NE(census.out.find("ciphertext t=3: 2 nodes, 6 source + 1 GT"), std::string::npos)
      << census.out;
  EXPECT_NE(census.out.find("private key: 4 entries"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "report-census.json"));
}

TEST_F(CliTest, ErrorsExitNonzero) {
  EXPECT_NE(Run({"frobnicate"}).code, 0);
  EXPECT_NE(Run({}).code, 0);

  Result missing = Run({"keygen", "--id", "0"});
  EXPECT_NE(missing.code, 0);
  EXPECT_NE(missing.err.find("missing file"), std::string::npos);

  Ok({"setup", "--id-bits", "1", "--time-bits", "2"});
  Result backend = Run({"--backend", "curve", "keygen", "--id", "0"});
  EXPECT_NE(backend.code, 0);
  EXPECT_NE(backend.err.find("BackendMismatch"), std::string::npos);

  Ok({"keygen", "--id", "0"});
  Ok({"encrypt", "--id", "0", "--t", "0", "--name", "w"});
  Result variant = Run({"--variant", "naive", "update-ct", "--name", "w", "--t", "1"});
  EXPECT_NE(variant.code, 0);
  EXPECT_NE(variant.err.find("VariantMismatch"), std::string::npos);

  Ok({"revoke", "--id", "0", "--t", "1"});
  Ok({"update-key", "--t", "2"});
  Result revoked = Run({"derive-dk", "--id", "0", "--t", "2"});
  EXPECT_NE(revoked.code, 0);
  EXPECT_NE(revoked.err.find("Revoked"), std::string::npos);

  EXPECT_NE(Run({"revoke", "--id", "1", "--t", "0"}).code, 0);
  EXPECT_NE(Run({"--seed", "xyz", "update-key", "--t", "0"}).code, 0);
  EXPECT_NE(Run({"update-ct", "--name", "w", "--t", "9"}).code, 0);
}

TEST_F(CliTest, TraceIsEmbeddedForMock) {
  Ok({"setup", "--id-bits", "1", "--time-bits", "2"});
  Ok({"--trace", "encrypt", "--id", "1", "--t", "1", "--name", "t"});
  const Json ct = Load("ct.t.json");
  ASSERT_TRUE(ct.contains("trace"));
  EXPECT_EQ(ct["trace"][0]["label"], "encrypt.s");
  // Traced files still load.
  Ok({"update-ct", "--name", "t", "--t", "2"});

  const fs::path curve = dir_ / "curve";
  EXPECT_EQ(Run({"--backend", "curve", "setup"}, curve).code, 0);
  EXPECT_NE(Run({"--trace", "encrypt", "--id", "101", "--t", "0", "--name", "t"}, curve).code,
            0);
}

}  // namespace
}  // namespace rsibe

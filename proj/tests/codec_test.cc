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

#include "rsibe/codec.h"
#include "test_util.h"

namespace rsibe {
namespace {

using testing_util::CaughtCode;

// One of every artifact, built from a single seeded run.
struct Artifacts {
  explicit Artifacts(Backend backend, std::uint64_t seed = 1)
      : rng(seed, "codec_test"),
        sys(rsibe::Setup(128, 4, 8, BackendConfig{backend, 128, false}, rng)) {
    sk = GenKey(Identity::Parse("10"), sys.mk, sys.st, sys.pp, rng);
    GenKey(Identity::Parse("01"), sys.mk, sys.st, sys.pp, rng);
    Revoke(Identity::Parse("01"), TimePeriod{4}, sys.rl, sys.st);
    ku = UpdateKey(TimePeriod{5}, sys.rl, sys.mk, sys.st, sys.pp, rng);
    dk = DeriveDk(sk, ku, sys.pp, rng);
    for (auto v : {SchemeVariant::kWeiOriginal, SchemeVariant::kNaiveSharedS,
                   SchemeVariant::kCorrectedParallel}) {
      cts.push_back(Encrypt(sk.id, TimePeriod{2}, MessageFromSeed(backend, 3), sys.pp, v, rng));
    }
  }

  Randomness rng;
  SetupResult sys;
  PrivateKey sk;
  KeyUpdate ku;
  DecryptionKey dk;
  std::vector<Ciphertext> cts;
};

class CodecRoundTrip : public ::testing::TestWithParam<Backend> {};

TEST_P(CodecRoundTrip, EveryArtifactIsStable) {
  Artifacts a(GetParam());
  const PublicParams& pp = a.sys.pp;
  auto reparse = [](const Json& j) { return Json::parse(j.dump(2)); };

  const PublicParams pp2 = PublicParamsFromJson(reparse(ToJson(pp)));
  EXPECT_EQ(ToJson(pp2).dump(), ToJson(pp).dump());
  EXPECT_EQ(pp2.egg, pp.egg);

  EXPECT_EQ(ToJson(MasterKeyFromJson(reparse(ToJson(a.sys.mk, pp)), pp), pp),
            ToJson(a.sys.mk, pp));

  const Json state = StateToJson(a.sys.st, a.sys.rl, pp);
  auto [st2, rl2] = StateFromJson(reparse(state), pp);
  EXPECT_EQ(StateToJson(st2, rl2, pp), state);
  EXPECT_TRUE(rl2.IsRevokedAt(Identity::Parse("01"), TimePeriod{4}));

  EXPECT_EQ(ToJson(PrivateKeyFromJson(reparse(ToJson(a.sk, pp)), pp), pp), ToJson(a.sk, pp));
  EXPECT_EQ(ToJson(KeyUpdateFromJson(reparse(ToJson(a.ku, pp)), pp), pp), ToJson(a.ku, pp));
  EXPECT_EQ(ToJson(DecryptionKeyFromJson(reparse(ToJson(a.dk, pp)), pp), pp), ToJson(a.dk, pp));
  for (const auto& ct : a.cts) {
    const Ciphertext back = CiphertextFromJson(reparse(ToJson(ct, pp)), pp);
    EXPECT_EQ(ToJson(back, pp), ToJson(ct, pp)) << VariantName(ct.variant);
    EXPECT_EQ(back.variant, ct.variant);
  }
}

TEST_P(CodecRoundTrip, LoadedArtifactsStillWork) {
  Artifacts a(GetParam(), 2);
  const PublicParams pp = PublicParamsFromJson(ToJson(a.sys.pp));
  const DecryptionKey dk = DecryptionKeyFromJson(ToJson(a.dk, pp), pp);
  for (const auto& ct : a.cts) {
    const Ciphertext loaded = CiphertextFromJson(ToJson(ct, pp), pp);
    const GroupElem out = Decrypt(loaded, dk, pp, a.rng);
    EXPECT_EQ(out == MessageFromSeed(GetParam(), 3),
              ct.variant != SchemeVariant::kWeiOriginal);
  }
}

INSTANTIATE_TEST_SUITE_P(Backends, CodecRoundTrip,
                         ::testing::Values(Backend::kMock, Backend::kCurve),
                         [](const auto& info) { return std::string(BackendName(info.param)); });

TEST(CodecTest, HeaderIsSelfDescribing) {
  Artifacts a(Backend::kMock);
  const Json j = ToJson(a.cts[0], a.sys.pp);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["type"], "ciphertext");
  EXPECT_EQ(j["backend"], "mock");
  EXPECT_EQ(j["variant"], "wei");
  EXPECT_EQ(j["nodes"][0]["label"], "010");
}

TEST(CodecTest, HeaderMismatchesAreRejected) {
  Artifacts mock(Backend::kMock);
  Artifacts curve(Backend::kCurve);
  EXPECT_EQ(CaughtCode([&] {
              (void)CiphertextFromJson(ToJson(mock.cts[0], mock.sys.pp), curve.sys.pp);
            }),
            ErrorCode::kBackendMismatch);
  EXPECT_EQ(CaughtCode([&] {
              (void)PrivateKeyFromJson(ToJson(mock.dk, mock.sys.pp), mock.sys.pp);
            }),
            ErrorCode::kDecodeError);
  Json j = ToJson(mock.sk, mock.sys.pp);
  j["schema"] = 2;
  EXPECT_EQ(CaughtCode([&] { (void)PrivateKeyFromJson(j, mock.sys.pp); }),
            ErrorCode::kDecodeError);
  EXPECT_EQ(CaughtCode([&] { (void)PublicParamsFromJson(Json::array()); }),
            ErrorCode::kDecodeError);
}

TEST(CodecTest, TamperedArtifactsAreRejected) {
  Artifacts a(Backend::kMock);
  const PublicParams& pp = a.sys.pp;
  auto code = [](auto fn) { return CaughtCode(fn); };

  Json p = ToJson(pp);
  p["g"]["g2"] = p["h"][0]["g2"];
  EXPECT_EQ(code([&] { (void)PublicParamsFromJson(p); }), ErrorCode::kDecodeError);
  p = ToJson(pp);
  p["h"].erase(0);
  EXPECT_EQ(code([&] { (void)PublicParamsFromJson(p); }), ErrorCode::kDecodeError);

  Json mk = ToJson(a.sys.mk, pp);
  mk["alpha"] = (a.sys.mk.alpha + Scalar::FromUint64(1)).ToHex();
  EXPECT_EQ(code([&] { (void)MasterKeyFromJson(mk, pp); }), ErrorCode::kDecodeError);

  Json sk = ToJson(a.sk, pp);
  sk["entries"].erase(1);
  EXPECT_EQ(code([&] { (void)PrivateKeyFromJson(sk, pp); }), ErrorCode::kDecodeError);
  sk = ToJson(a.sk, pp);
  sk["leaf"] = 3;
  EXPECT_EQ(code([&] { (void)PrivateKeyFromJson(sk, pp); }), ErrorCode::kDecodeError);

  Json ku = ToJson(a.ku, pp);
  ku["entries"].push_back(Json{{"node", ""}, {"k0", ku["entries"][0]["k0"]},
                               {"k1", ku["entries"][0]["k1"]}});
  EXPECT_EQ(code([&] { (void)KeyUpdateFromJson(ku, pp); }), ErrorCode::kDecodeError);

  Json ct = ToJson(a.cts[0], pp);
  ct["nodes"].erase(0);
  EXPECT_EQ(code([&] { (void)CiphertextFromJson(ct, pp); }), ErrorCode::kDecodeError);
  ct = ToJson(a.cts[0], pp);
  ct["nodes"][2]["tail"].erase(0);  // node "1"
  EXPECT_EQ(code([&] { (void)CiphertextFromJson(ct, pp); }), ErrorCode::kDecodeError);
  ct = ToJson(a.cts[0], pp);
  ct["variant"] = "corrected";
  EXPECT_EQ(code([&] { (void)CiphertextFromJson(ct, pp); }), ErrorCode::kVariantMismatch);
  ct = ToJson(a.cts[0], pp);
  ct["base"]["c1"] = "zz";
  EXPECT_EQ(code([&] { (void)CiphertextFromJson(ct, pp); }), ErrorCode::kDecodeError);
  ct = ToJson(a.cts[0], pp);
  ct["base"]["c1"] = ct["base"]["c0"];  // a GT encoding where G1 is expected
  EXPECT_EQ(code([&] { (void)CiphertextFromJson(ct, pp); }), ErrorCode::kDecodeError);
  ct = ToJson(a.cts[0], pp);
  ct["t"] = 8;
  EXPECT_EQ(code([&] { (void)CiphertextFromJson(ct, pp); }), ErrorCode::kInvalidTime);

  Json state = StateToJson(a.sys.st, a.sys.rl, pp);
  state["node_secrets"][0]["g_x1"] = state["node_secrets"][0]["g_x0"];
  EXPECT_NE(code([&] { (void)StateFromJson(state, pp); }), std::nullopt);
}

TEST(CodecTest, ExtraTraceKeyIsIgnored) {
  Randomness rng(3, "t", true);
  auto [mk, pp, st, rl] = rsibe::Setup(128, 2, 2, BackendConfig{Backend::kMock, 128, true}, rng);
  const Ciphertext ct = Encrypt(Identity::Parse("1"), TimePeriod{1},
                                MessageFromSeed(Backend::kMock, 0), pp,
                                SchemeVariant::kWeiOriginal, rng);
  Json j = ToJson(ct, pp);
  j["trace"] = TraceToJson(rng);
  ASSERT_TRUE(j["trace"].is_array());
  EXPECT_EQ(j["trace"].back()["label"], "encrypt.s");
  EXPECT_EQ(ToJson(CiphertextFromJson(j, pp), pp), ToJson(ct, pp));
}

TEST(CodecTest, HexHelpers) {
  const std::vector<std::uint8_t> bytes{0x00, 0x7f, 0xab, 0xff};
  EXPECT_EQ(ToHex(bytes), "007fabff");
  EXPECT_EQ(FromHex("007fabff"), bytes);
  // Lowercase only, so each element has a single text form.
  EXPECT_EQ(CaughtCode([] { (void)FromHex("007FabFF"); }), ErrorCode::kDecodeError);
  EXPECT_EQ(CaughtCode([] { (void)FromHex("abc"); }), ErrorCode::kDecodeError);
  EXPECT_EQ(CaughtCode([] { (void)FromHex("0g"); }), ErrorCode::kDecodeError);

  const std::string h1 = MessageHandle(MessageFromSeed(Backend::kMock, 1));
  EXPECT_EQ(h1.size(), 16u);
  EXPECT_EQ(h1, MessageHandle(MessageFromSeed(Backend::kMock, 1)));
  EXPECT_NE(h1, MessageHandle(MessageFromSeed(Backend::kMock, 2)));
}

TEST(CodecTest, ReportsCarrySchema) {
  const Json failure = ToJson(ReproduceFailure(1, 2, 1, SchemeVariant::kWeiOriginal,
                                               DelegationMode::kBitCorrected));
  EXPECT_EQ(failure["schema"], kSchemaVersion);
  const Json census = ToJson(CensusSizes(2, 2, SchemeVariant::kNaiveSharedS));
  EXPECT_EQ(census["schema"], kSchemaVersion);
}

}  // namespace
}  // namespace rsibe

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

#include <algorithm>
#include <random>

#include "rsibe/group.h"
#include "rsibe/randomness.h"
#include "test_util.h"

namespace rsibe {
namespace {

using testing_util::CaughtCode;
using testing_util::S;
using testing_util::ScalarHex;

constexpr std::string_view kOrderHex =
    "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";

// Reference values computed with Python integers:
// a = 2^200 + 12345, b = 3^150 mod p.
const Scalar kA = ScalarHex("0100000000000000000000000000000000000000000000003039");
const Scalar kB = ScalarHex("0000359ba2b98ca11d6864a331b45ae7114c01ffbdcf60cc16e692fb63c6e219");

TEST(ScalarTest, MatchesBigIntegerReference) {
  EXPECT_EQ((kA * kB).ToHex(),
            "1d96ee6f303704e87ef7cd129609e54786448260bbfb9dbca933d155def2829c");
  EXPECT_EQ(kA.Inverse().ToHex(),
            "4fb6f34bd7dadd2a93ae56e152c1706273ffb429627ca3899c0cb3a224733429");
  EXPECT_EQ((kA - kB).ToHex(),
            "73ed71b786e3f1a715d17364d7ed7d1e4271a203422efb32e9196d039c394e21");
}

TEST(ScalarTest, ReducesModuloGroupOrder) {
  EXPECT_FALSE(Scalar::FromBytes(FromHex(kOrderHex)).has_value());
  const Scalar p_minus_1 = S(-1);
  EXPECT_EQ(p_minus_1 + S(1), Scalar());
  EXPECT_TRUE((p_minus_1 + S(1)).IsZero());
  EXPECT_EQ(S(-7).ToSmallInt(), -7);
  EXPECT_EQ(S(12).ToSmallInt(), 12);
  EXPECT_FALSE(kB.ToSmallInt().has_value());
  EXPECT_EQ(CaughtCode([] { (void)Scalar().Inverse(); }), ErrorCode::kInvalidParameter);
}

TEST(ScalarTest, ByteRoundTrip) {
  Randomness rng(4, "scalar");
  for (int i = 0; i < 50; ++i) {
    const Scalar x = rng.SampleNonzero("x");
    const auto be = x.ToBytes();
    EXPECT_EQ(Scalar::FromBytes(be), x);
    auto le = x.ToLittleEndian();
    std::reverse(le.begin(), le.end());
    EXPECT_EQ(le, be);
  }
}

TEST(RandomnessTest, NeverReturnsZero) {
  Randomness rng(0, "zero");
  for (int i = 0; i < 2000; ++i) EXPECT_FALSE(rng.SampleNonzero("x").IsZero());
}

TEST(RandomnessTest, DistinctStatesGiveDistinctDraws) {
  Randomness a(1), b(2), c(1, "other");
  const Scalar x = a.SampleNonzero("x");
  EXPECT_NE(x, b.SampleNonzero("x"));
  EXPECT_NE(x, c.SampleNonzero("x"));
  EXPECT_NE(x, a.SampleNonzero("x"));
  Randomness again(1);
  EXPECT_EQ(x, again.SampleNonzero("y"));
}

TEST(RandomnessTest, TraceRecordsLabelledDraws) {
  Randomness rng(9, "trace", true);
  const Scalar s = rng.SampleNonzero("encrypt.s");
  const Scalar v = rng.SampleNonzero("encrypt.s_v[1]");
  ASSERT_EQ(rng.trace().size(), 2u);
  EXPECT_EQ(rng.trace()[0].label, "encrypt.s");
  EXPECT_EQ(rng.Last("encrypt.s"), s);
  EXPECT_EQ(rng.Last("encrypt.s_v[1]"), v);
  EXPECT_FALSE(rng.Last("missing").has_value());

  Randomness quiet(9, "trace");
  EXPECT_EQ(quiet.SampleNonzero("encrypt.s"), s);
  EXPECT_TRUE(quiet.trace().empty());
}

class GroupLawTest : public ::testing::TestWithParam<Backend> {
 protected:
  Backend backend() const { return GetParam(); }
  GroupElem Gen(Group g) const { return GroupElem::Generator(backend(), g); }
  GroupElem Id(Group g) const { return GroupElem::Identity(backend(), g); }
};

TEST_P(GroupLawTest, BasicLaws) {
  Randomness rng(11, "laws");
  for (Group grp : {Group::kG1, Group::kG2, Group::kGT}) {
    const GroupElem x = Gen(grp).Pow(rng.SampleNonzero("x"));
    const GroupElem y = Gen(grp).Pow(rng.SampleNonzero("y"));
    const GroupElem z = Gen(grp).Pow(rng.SampleNonzero("z"));
    EXPECT_TRUE((x * Inverse(x)).IsIdentity()) << GroupName(grp);
    EXPECT_EQ(x * Inverse(x), Id(grp));
    EXPECT_EQ(Pow(x, S(1)), x);
    EXPECT_TRUE(Pow(x, Scalar()).IsIdentity());
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x / y, x * Inverse(y));
    EXPECT_EQ(Pow(x, S(2)) * Pow(x, S(3)), Pow(x, S(5)));
    EXPECT_EQ(Pow(Pow(x, kA), kB), Pow(x, kA * kB));
    EXPECT_EQ(Pow(x, S(-1)), Inverse(x));
    EXPECT_FALSE(Gen(grp).IsIdentity());
  }
}

TEST_P(GroupLawTest, MismatchedTagsAreRejected) {
  EXPECT_EQ(CaughtCode([&] { (void)(Gen(Group::kG1) * Gen(Group::kG2)); }),
            ErrorCode::kGroupMismatch);
  EXPECT_EQ(CaughtCode([&] { (void)Pair(Gen(Group::kG2), Gen(Group::kG1)); }),
            ErrorCode::kGroupMismatch);
  EXPECT_EQ(CaughtCode([&] { (void)Pair(Gen(Group::kG1), Gen(Group::kGT)); }),
            ErrorCode::kGroupMismatch);
  const Backend other = backend() == Backend::kMock ? Backend::kCurve : Backend::kMock;
  EXPECT_EQ(CaughtCode([&] {
              (void)(Gen(Group::kG1) * GroupElem::Generator(other, Group::kG1));
            }),
            ErrorCode::kBackendMismatch);
}

TEST_P(GroupLawTest, PairingExamples) {
  const GroupElem a = Gen(Group::kG1), b = Gen(Group::kG2);
  EXPECT_EQ(Pair(Pow(a, S(2)), Pow(b, S(3))), Pow(Pair(a, b), S(6)));
  EXPECT_TRUE(Pair(Id(Group::kG1), b).IsIdentity());
  EXPECT_TRUE(Pair(a, Id(Group::kG2)).IsIdentity());
  EXPECT_FALSE(Pair(a, b).IsIdentity());
  EXPECT_EQ(Pair(a, b), Gen(Group::kGT));
}

TEST_P(GroupLawTest, BilinearityOnRandomExponents) {
  Randomness rng(2024, "bilinear");
  const GroupElem a = Gen(Group::kG1).Pow(rng.SampleNonzero("a"));
  const GroupElem b = Gen(Group::kG2).Pow(rng.SampleNonzero("b"));
  const GroupElem base = Pair(a, b);
  for (int i = 0; i < 100; ++i) {
    const Scalar x = rng.SampleNonzero("x");
    const Scalar y = rng.SampleNonzero("y");
    ASSERT_EQ(Pair(Pow(a, x), Pow(b, y)), Pow(base, x * y)) << "trial " << i;
  }
}

TEST_P(GroupLawTest, SerializationRoundTripIsCanonical) {
  Randomness rng(5, "codec");
  for (Group grp : {Group::kG1, Group::kG2, Group::kGT}) {
    for (int i = 0; i < 10; ++i) {
      const Scalar e = rng.SampleNonzero("e");
      const GroupElem x = Pow(Gen(grp), e);
      const auto bytes = Serialize(x);
      EXPECT_EQ(bytes.size(), EncodedSize(backend(), grp));
      EXPECT_EQ(Deserialize(bytes, backend(), grp), x);
      // Same element reached another way encodes identically.
      const GroupElem y = Pow(Gen(grp), e + S(1)) / Gen(grp);
      EXPECT_EQ(Serialize(y), bytes);
    }
    const auto id_bytes = Serialize(Id(grp));
    EXPECT_TRUE(Deserialize(id_bytes, backend(), grp).IsIdentity());
  }
}

TEST_P(GroupLawTest, MalformedBytesAreRejected) {
  for (Group grp : {Group::kG1, Group::kG2, Group::kGT}) {
    auto bytes = Serialize(Gen(grp));
    std::vector<std::uint8_t> truncated(bytes.begin(), bytes.end() - 1);
    EXPECT_EQ(CaughtCode([&] { (void)Deserialize(truncated, backend(), grp); }),
              ErrorCode::kDecodeError);
    bytes.push_back(0);
    EXPECT_EQ(CaughtCode([&] { (void)Deserialize(bytes, backend(), grp); }),
              ErrorCode::kDecodeError);
    EXPECT_EQ(CaughtCode([&] { (void)Deserialize({}, backend(), grp); }),
              ErrorCode::kDecodeError);
  }
}

INSTANTIATE_TEST_SUITE_P(Backends, GroupLawTest,
                         ::testing::Values(Backend::kMock, Backend::kCurve),
                         [](const auto& info) { return std::string(BackendName(info.param)); });

TEST(MockGroupTest, DlogIsExact) {
  Randomness rng(77, "dlog");
  const GroupElem g = GroupElem::Generator(Backend::kMock, Group::kG1);
  const GroupElem h = GroupElem::Generator(Backend::kMock, Group::kG2);
  EXPECT_EQ(Dlog(g), S(1));
  for (int i = 0; i < 100; ++i) {
    const Scalar a = rng.SampleNonzero("a"), b = rng.SampleNonzero("b");
    const GroupElem x = Pow(g, a), y = Pow(g, b);
    ASSERT_EQ(Dlog(x), a);
    ASSERT_EQ(Dlog(x * y), a + b);
    ASSERT_EQ(Dlog(Inverse(x)), -a);
    ASSERT_EQ(Dlog(Pair(x, Pow(h, b))), a * b);
  }
}

TEST(MockGroupTest, EncodingIsTagPlusBigEndianExponent) {
  const GroupElem x = Pow(GroupElem::Generator(Backend::kMock, Group::kG2), S(258));
  const auto bytes = Serialize(x);
  ASSERT_EQ(bytes.size(), 33u);
  EXPECT_EQ(bytes[0], static_cast<std::uint8_t>(Group::kG2));
  EXPECT_EQ(bytes[31], 1);
  EXPECT_EQ(bytes[32], 2);

  auto wrong_tag = bytes;
  wrong_tag[0] = static_cast<std::uint8_t>(Group::kG1);
  EXPECT_EQ(CaughtCode([&] { (void)Deserialize(wrong_tag, Backend::kMock, Group::kG2); }),
            ErrorCode::kDecodeError);

  // Exponent p is out of range, so a second encoding of zero is refused.
  std::vector<std::uint8_t> non_canonical{static_cast<std::uint8_t>(Group::kG2)};
  const auto order = FromHex(kOrderHex);
  non_canonical.insert(non_canonical.end(), order.begin(), order.end());
  EXPECT_EQ(CaughtCode([&] { (void)Deserialize(non_canonical, Backend::kMock, Group::kG2); }),
            ErrorCode::kDecodeError);
}

TEST(CurveGroupTest, EncodingSizesAndDlogRefusal) {
  EXPECT_EQ(EncodedSize(Backend::kCurve, Group::kG1), 48u);
  EXPECT_EQ(EncodedSize(Backend::kCurve, Group::kG2), 96u);
  EXPECT_EQ(EncodedSize(Backend::kCurve, Group::kGT), 576u);
  EXPECT_EQ(CaughtCode([] {
              (void)Dlog(GroupElem::Generator(Backend::kCurve, Group::kG1));
            }),
            ErrorCode::kRequiresMockBackend);
}

TEST(CurveGroupTest, OffCurveAndOutOfGroupBytesAreRejected) {
  // Every encoding that does not decode must fail with DecodeError.
  std::mt19937_64 gen(3);
  int rejected = 0;
  for (int i = 0; i < 64; ++i) {
    std::vector<std::uint8_t> bytes(48);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(gen());
    bytes[0] = static_cast<std::uint8_t>((bytes[0] & 0x1f) | 0x80);  // compressed flag
    try {
      const GroupElem p = Deserialize(bytes, Backend::kCurve, Group::kG1);
      EXPECT_EQ(Serialize(p), bytes);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDecodeError);
      ++rejected;
    }
  }
  // Random x coordinates are on the curve about half the time, and then
  // almost never in the prime-order subgroup.
  EXPECT_GT(rejected, 56);

  std::vector<std::uint8_t> gt(576, 0);
  gt[575] = 2;
  EXPECT_EQ(CaughtCode([&] { (void)Deserialize(gt, Backend::kCurve, Group::kGT); }),
            ErrorCode::kDecodeError);
  std::vector<std::uint8_t> uncompressed_flag(48, 0);
  EXPECT_EQ(CaughtCode([&] {
              (void)Deserialize(uncompressed_flag, Backend::kCurve, Group::kG1);
            }),
            ErrorCode::kDecodeError);
}

}  // namespace
}  // namespace rsibe

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

#include <random>

#include "rsibe/codec.h"
#include "rsibe/scheme.h"
#include "test_util.h"

namespace rsibe {
namespace {

using testing_util::CaughtCode;
using testing_util::S;

constexpr SchemeVariant kAllVariants[] = {SchemeVariant::kWeiOriginal,
                                          SchemeVariant::kNaiveSharedS,
                                          SchemeVariant::kCorrectedParallel};

std::string Site(const char* prefix, const char* bits) {
  return std::string(prefix) + "[" + bits + "]";
}

class World {
 public:
  World(unsigned n, unsigned ell, std::uint64_t seed = 1, Backend backend = Backend::kMock)
      : rng_(seed, "scheme_test", backend == Backend::kMock),
        sys_(Setup(128, std::uint64_t{1} << n, std::uint64_t{1} << ell,
                   BackendConfig{backend, 128, backend == Backend::kMock}, rng_)) {}

  Randomness& rng() { return rng_; }
  const PublicParams& pp() const { return sys_.pp; }
  const MasterKey& mk() const { return sys_.mk; }
  RevocationTree& st() { return sys_.st; }
  RevocationList& rl() { return sys_.rl; }
  Scalar Drawn(const std::string& label) const { return *rng_.Last(label); }

  PrivateKey Key(const char* id) { return GenKey(Identity::Parse(id), mk(), st(), pp(), rng_); }
  KeyUpdate Update(std::uint64_t t) { return UpdateKey(TimePeriod{t}, rl(), mk(), st(), pp(), rng_); }
  DecryptionKey Dk(const PrivateKey& sk, std::uint64_t t) {
    return DeriveDk(sk, Update(t), pp(), rng_);
  }
  GroupElem Message(std::uint64_t seed) const { return MessageFromSeed(pp().kind(), seed); }
  Ciphertext Enc(const PrivateKey& sk, std::uint64_t t, const GroupElem& m, SchemeVariant v) {
    return Encrypt(sk.id, TimePeriod{t}, m, pp(), v, rng_);
  }
  GroupElem Dec(const Ciphertext& ct, const DecryptionKey& dk,
                DelegationMode mode = DelegationMode::kBitCorrected) {
    return Decrypt(ct, dk, pp(), rng_, mode);
  }

  // dlog of the public generator g.
  Scalar Gamma() const { return Dlog(pp().g.in_g1); }

 private:
  Randomness rng_;
  SetupResult sys_;
};

TEST(HashTest, IdentityExamples) {
  World w(3, 2);
  const auto& pp = w.pp();
  EXPECT_EQ(HashIdentity(pp, Identity::Parse("000"), Group::kG1), pp.u[0].in_g1);
  EXPECT_EQ(HashIdentity(pp, Identity::Parse("111"), Group::kG2),
            pp.u[0].in_g2 * pp.u[1].in_g2 * pp.u[2].in_g2 * pp.u[3].in_g2);
  EXPECT_EQ(Dlog(HashIdentity(pp, Identity::Parse("101"), Group::kG1)),
            Dlog(pp.u[0].in_g1) + Dlog(pp.u[1].in_g1) + Dlog(pp.u[3].in_g1));
  EXPECT_EQ(CaughtCode([&] { (void)HashIdentity(pp, Identity::Parse("10"), Group::kG1); }),
            ErrorCode::kInvalidIdentity);
}

TEST(HashTest, TimeExamples) {
  World w(2, 3);
  const auto& pp = w.pp();
  EXPECT_EQ(HashTime(pp, TimePeriod{0}, Group::kG1), pp.h[0].in_g1);
  EXPECT_EQ(HashTime(pp, TimePeriod{7}, Group::kG1),
            pp.h[0].in_g1 * pp.h[1].in_g1 * pp.h[2].in_g1 * pp.h[3].in_g1);
  EXPECT_EQ(Dlog(HashTime(pp, TimePeriod{5}, Group::kG2)),
            Dlog(pp.h[0].in_g2) + Dlog(pp.h[1].in_g2) + Dlog(pp.h[3].in_g2));
  EXPECT_EQ(CaughtCode([&] { (void)HashTime(pp, TimePeriod{8}, Group::kG1); }),
            ErrorCode::kInvalidTime);

  // The leaf component of a fresh ciphertext is F_h(t) raised to s.
  const PrivateKey sk = w.Key("01");
  for (std::uint64_t t = 0; t < 8; ++t) {
    const Ciphertext ct = w.Enc(sk, t, w.Message(t), SchemeVariant::kWeiOriginal);
    EXPECT_EQ(ct.nodes.at(TimeLeaf(TimePeriod{t}, 3)).c0,
              HashTime(pp, TimePeriod{t}, Group::kG1).Pow(w.Drawn("encrypt.s")));
  }
}

TEST(SetupTest, StructureAndDeterminism) {
  World w(2, 3, 42);
  const auto& pp = w.pp();
  const Scalar alpha = w.Drawn("setup.alpha");
  EXPECT_EQ(pp.n, 2u);
  EXPECT_EQ(pp.ell, 3u);
  EXPECT_EQ(pp.u.size(), 3u);
  EXPECT_EQ(pp.h.size(), 4u);
  EXPECT_EQ(Pair(pp.g1, pp.g2), Pow(Pair(pp.g.in_g1, pp.g2), alpha));
  EXPECT_EQ(Pair(pp.g.in_g1, w.mk().msk), pp.egg);
  EXPECT_EQ(Dlog(pp.g1), alpha * w.Gamma());
  EXPECT_EQ(Dlog(pp.g.in_g2), w.Gamma());
  for (const auto& u : pp.u) EXPECT_FALSE(u.in_g1.IsIdentity());
  for (const auto& h : pp.h) EXPECT_FALSE(h.in_g2.IsIdentity());
  EXPECT_TRUE(w.rl().empty());
  EXPECT_EQ(KuNodes(w.st(), w.rl(), TimePeriod{0}), NodeSet{NodeLabel::Root()});

  World again(2, 3, 42);
  EXPECT_EQ(ToJson(again.pp()).dump(), ToJson(pp).dump());
  World other(2, 3, 43);
  EXPECT_NE(ToJson(other.pp()).dump(), ToJson(pp).dump());
}

TEST(SetupTest, RejectsBadParameters) {
  Randomness rng(1);
  const BackendConfig mock{Backend::kMock, 128, false};
  EXPECT_EQ(CaughtCode([&] { rsibe::Setup(128, 3, 8, mock, rng); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CaughtCode([&] { rsibe::Setup(128, 4, 6, mock, rng); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CaughtCode([&] { rsibe::Setup(128, 1, 8, mock, rng); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CaughtCode([&] { rsibe::Setup(0, 4, 8, mock, rng); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(CaughtCode([&] { rsibe::Setup(256, 4, 8, mock, rng); }), ErrorCode::kInvalidParameter);
}

TEST(GenKeyTest, OneEntryPerPathNode) {
  World w(2, 2);
  EXPECT_TRUE(w.st().secrets().empty());
  const PrivateKey a = w.Key("10");
  ASSERT_EQ(a.entries.size(), 3u);
  NodeSet labels;
  for (const auto& [x, _] : a.entries) labels.insert(x);
  const auto path = Path(LeafLabel(a.leaf, 2), 2);
  EXPECT_EQ(labels, NodeSet(path.begin(), path.end()));
  EXPECT_EQ(w.st().secrets().size(), 3u);
  for (const auto& [x, secret] : w.st().secrets()) {
    EXPECT_EQ(secret.share0 * secret.share1, w.pp().g2) << x.Display();
  }
  EXPECT_EQ(CaughtCode([&] { w.Key("10"); }), ErrorCode::kAlreadyAssigned);
  EXPECT_EQ(CaughtCode([&] { w.Key("1"); }), ErrorCode::kInvalidIdentity);
}

TEST(GenKeyTest, SharedNodesReuseStoredSecrets) {
  World w(2, 2);
  w.Key("00");
  const auto before = w.st().secrets();
  w.Key("01");  // leaf 1 shares the root and node 0 with leaf 0
  EXPECT_EQ(w.st().secrets().size(), 4u);
  for (const char* shared : {"", "0"}) {
    const NodeLabel x = NodeLabel::Parse(shared);
    EXPECT_EQ(w.st().FindSecret(x)->share0, before.at(x).share0);
  }
  w.Key("10");
  EXPECT_EQ(w.st().secrets().size(), 6u);
}

TEST(GenKeyTest, ExponentStructure) {
  World w(3, 2, 7);
  const PrivateKey sk = w.Key("110");
  const Scalar alpha = w.mk().alpha;
  const Scalar fu = Dlog(HashIdentity(w.pp(), sk.id, Group::kG2));
  for (const auto& [x, key] : sk.entries) {
    const Scalar r = w.Drawn("gen_key.r_x0[" + x.ToString() + "]");
    EXPECT_EQ(Dlog(key.first), Dlog(w.st().FindSecret(x)->share0) * alpha + fu * r);
    EXPECT_EQ(Dlog(key.second), w.Gamma() * r);
  }
}

TEST(UpdateKeyTest, EntriesFollowTheCover) {
  World w(2, 2, 3);
  std::vector<PrivateKey> keys;
  for (const char* id : {"00", "01", "10", "11"}) keys.push_back(w.Key(id));
  EXPECT_EQ(w.Update(0).entries.size(), 1u);
  Revoke(Identity::Parse("00"), TimePeriod{0}, w.rl(), w.st());
  const KeyUpdate ku = w.Update(1);
  ASSERT_EQ(ku.entries.size(), 2u);
  EXPECT_TRUE(ku.entries.contains(NodeLabel::Parse("01")));
  EXPECT_TRUE(ku.entries.contains(NodeLabel::Parse("1")));
  EXPECT_EQ(CaughtCode([&] { w.Update(4); }), ErrorCode::kInvalidTime);

  const Scalar fh = Dlog(HashTime(w.pp(), TimePeriod{1}, Group::kG2));
  for (const auto& [x, upd] : ku.entries) {
    const Scalar r = w.Drawn("update_key.r_x1[" + x.ToString() + "]");
    EXPECT_EQ(Dlog(upd.first), Dlog(w.st().FindSecret(x)->share1) * w.mk().alpha + fh * r);
    EXPECT_EQ(Dlog(upd.second), w.Gamma() * r);
  }
}

TEST(DeriveDkTest, ExponentBookkeeping) {
  World w(2, 3, 5);
  const PrivateKey sk = w.Key("11");
  const KeyUpdate ku = w.Update(6);
  const DecryptionKey dk = DeriveDk(sk, ku, w.pp(), w.rng());
  // No revocations: the common node is the root.
  const Scalar rho0 = w.Drawn("gen_key.r_x0[]") + w.Drawn("derive_dk.r0");
  const Scalar rho1 = w.Drawn("update_key.r_x1[]") + w.Drawn("derive_dk.r1");
  const auto& pp = w.pp();
  EXPECT_EQ(Dlog(dk.d1), w.mk().alpha * Dlog(pp.g2) +
                             rho0 * Dlog(HashIdentity(pp, sk.id, Group::kG2)) +
                             rho1 * Dlog(HashTime(pp, TimePeriod{6}, Group::kG2)));
  EXPECT_EQ(Dlog(dk.d2), w.Gamma() * rho0);
  EXPECT_EQ(Dlog(dk.d3), w.Gamma() * rho1);
  EXPECT_EQ(dk.t, TimePeriod{6});

  // A second derivation differs in bytes yet keeps the same form.
  const DecryptionKey again = DeriveDk(sk, ku, pp, w.rng());
  EXPECT_NE(Serialize(again.d1), Serialize(dk.d1));
  const Scalar rho0b = w.Drawn("gen_key.r_x0[]") + w.Drawn("derive_dk.r0");
  const Scalar rho1b = w.Drawn("update_key.r_x1[]") + w.Drawn("derive_dk.r1");
  EXPECT_EQ(Dlog(again.d1), w.mk().alpha * Dlog(pp.g2) +
                                rho0b * Dlog(HashIdentity(pp, sk.id, Group::kG2)) +
                                rho1b * Dlog(HashTime(pp, TimePeriod{6}, Group::kG2)));
}

TEST(DeriveDkTest, RevokedUserIsRefused) {
  World w(2, 2);
  const PrivateKey sk = w.Key("01");
  w.Key("10");
  Revoke(sk.id, TimePeriod{1}, w.rl(), w.st());
  EXPECT_NO_THROW(w.Dk(sk, 0));
  EXPECT_EQ(CaughtCode([&] { w.Dk(sk, 1); }), ErrorCode::kRevoked);
  EXPECT_EQ(CaughtCode([&] { w.Dk(sk, 3); }), ErrorCode::kRevoked);
}

TEST(RevokeTest, Examples) {
  World w(2, 2);
  const PrivateKey a = w.Key("00");
  const PrivateKey b = w.Key("11");
  Revoke(a.id, TimePeriod{2}, w.rl(), w.st());
  EXPECT_EQ(CaughtCode([&] { w.Dk(a, 2); }), ErrorCode::kRevoked);
  EXPECT_NO_THROW(w.Dk(a, 1));
  EXPECT_NO_THROW(w.Dk(b, 2));
  EXPECT_EQ(CaughtCode([&] { Revoke(Identity::Parse("01"), TimePeriod{0}, w.rl(), w.st()); }),
            ErrorCode::kUnknownIdentity);
}

TEST(EncryptTest, NodeSetAndTails) {
  World w(2, 3, 9);
  const PrivateKey sk = w.Key("10");
  const GroupElem m = w.Message(1);
  for (SchemeVariant v : kAllVariants) {
    const Ciphertext ct = w.Enc(sk, 3, m, v);
    ASSERT_EQ(ct.nodes.size(), 2u);
    EXPECT_TRUE(ct.nodes.at(NodeLabel::Parse("011")).tail.empty());
    const NodeComponent& one = ct.nodes.at(NodeLabel::Parse("1"));
    ASSERT_EQ(one.tail.size(), 2u);
    EXPECT_EQ(ct.base.has_value(), v != SchemeVariant::kCorrectedParallel);
    for (const auto& [_, comp] : ct.nodes) {
      EXPECT_EQ(comp.own.has_value(), v == SchemeVariant::kCorrectedParallel);
    }
  }
  EXPECT_EQ(CaughtCode([&] { (void)Encrypt(Identity::Parse("1"), TimePeriod{0}, m, w.pp(),
                                           SchemeVariant::kWeiOriginal, w.rng()); }),
            ErrorCode::kInvalidIdentity);
  EXPECT_EQ(CaughtCode([&] { (void)w.Enc(sk, 8, m, SchemeVariant::kWeiOriginal); }),
            ErrorCode::kInvalidTime);
  EXPECT_EQ(CaughtCode([&] { (void)w.Enc(sk, 0, w.pp().g1, SchemeVariant::kWeiOriginal); }),
            ErrorCode::kGroupMismatch);
}

// Exponent of a node component relative to the h bases: c0 = F(b_v)^x and
// each tail entry h_j^x.
void ExpectNodeExponent(const PublicParams& pp, const NodeComponent& comp, const Scalar& x) {
  EXPECT_EQ(Dlog(comp.c0), Dlog(HashLabel(pp, comp.label, Group::kG1)) * x)
      << comp.label.Display();
  for (unsigned j = comp.label.depth() + 1; j <= pp.ell; ++j) {
    EXPECT_EQ(Dlog(comp.TailAt(j)), Dlog(pp.h[j].in_g1) * x);
  }
}

TEST(EncryptTest, ExponentsPerVariant) {
  World w(2, 3, 10);
  const PrivateKey sk = w.Key("01");
  const GroupElem m = w.Message(2);
  const auto& pp = w.pp();
  const Scalar fu = Dlog(HashIdentity(pp, sk.id, Group::kG1));
  const Scalar egg = Dlog(pp.egg);

  const Ciphertext wei = w.Enc(sk, 3, m, SchemeVariant::kWeiOriginal);
  const Scalar s = w.Drawn("encrypt.s");
  const Scalar sv = w.Drawn(Site("encrypt.s_v", "1"));
  EXPECT_NE(sv, s);
  EXPECT_FALSE(w.rng().Last(Site("encrypt.s_v", "011")).has_value());
  EXPECT_EQ(Dlog(wei.base->c0), Dlog(m) + egg * s);
  EXPECT_EQ(Dlog(wei.base->c1), -(w.Gamma() * s));
  EXPECT_EQ(Dlog(wei.base->c2), fu * s);
  ExpectNodeExponent(pp, wei.nodes.at(NodeLabel::Parse("011")), s);
  ExpectNodeExponent(pp, wei.nodes.at(NodeLabel::Parse("1")), sv);

  w.rng().ClearTrace();
  const Ciphertext naive = w.Enc(sk, 0, m, SchemeVariant::kNaiveSharedS);
  const Scalar shared = w.Drawn("encrypt.s");
  EXPECT_EQ(w.rng().trace().size(), 1u);
  for (const auto& [_, comp] : naive.nodes) ExpectNodeExponent(pp, comp, shared);

  w.rng().ClearTrace();
  const Ciphertext corrected = w.Enc(sk, 1, m, SchemeVariant::kCorrectedParallel);
  EXPECT_FALSE(w.rng().Last("encrypt.s").has_value());
  for (const auto& [label, comp] : corrected.nodes) {
    const Scalar x = w.Drawn("encrypt.s_v[" + label.ToString() + "]");
    ExpectNodeExponent(pp, comp, x);
    EXPECT_EQ(Dlog(comp.own->c0), Dlog(m) + egg * x);
    EXPECT_EQ(Dlog(comp.own->c1), -(w.Gamma() * x));
    EXPECT_EQ(Dlog(comp.own->c2), fu * x);
  }
}

TEST(UpdateCtTest, Errors) {
  World w(2, 3);
  const PrivateKey sk = w.Key("01");
  const Ciphertext ct = w.Enc(sk, 4, w.Message(0), SchemeVariant::kWeiOriginal);
  EXPECT_EQ(CaughtCode([&] { (void)UpdateCt(ct, TimePeriod{3}, w.pp(), w.rng()); }),
            ErrorCode::kInvalidUpdate);
  EXPECT_EQ(CaughtCode([&] { (void)UpdateCt(ct, TimePeriod{8}, w.pp(), w.rng()); }),
            ErrorCode::kInvalidTime);
  Ciphertext stripped = ct;
  stripped.base.reset();
  EXPECT_EQ(CaughtCode([&] { (void)UpdateCt(stripped, TimePeriod{5}, w.pp(), w.rng()); }),
            ErrorCode::kVariantMismatch);
}

TEST(UpdateCtTest, SameTimeRerandomizes) {
  World w(2, 3, 2);
  const PrivateKey sk = w.Key("11");
  const GroupElem m = w.Message(5);
  const DecryptionKey dk = w.Dk(sk, 2);
  for (SchemeVariant v : kAllVariants) {
    const Ciphertext ct = w.Enc(sk, 2, m, v);
    const Ciphertext same = UpdateCt(ct, TimePeriod{2}, w.pp(), w.rng());
    EXPECT_EQ(same.t, ct.t);
    ASSERT_EQ(same.nodes.size(), ct.nodes.size());
    for (const auto& [label, comp] : ct.nodes) {
      EXPECT_NE(Serialize(same.nodes.at(label).c0), Serialize(comp.c0));
    }
    EXPECT_EQ(w.Dec(same, dk), m) << VariantName(v);
  }
}

TEST(UpdateCtTest, WeiLeafAndBaseDrift) {
  World w(2, 3, 21);
  const PrivateKey sk = w.Key("10");
  const auto& pp = w.pp();
  for (std::uint64_t t = 0; t + 1 < 8; ++t) {
    w.rng().ClearTrace();
    const Ciphertext ct = w.Enc(sk, t, w.Message(t), SchemeVariant::kWeiOriginal);
    const Scalar s = w.Drawn("encrypt.s");
    const NodeLabel next = TimeLeaf(TimePeriod{t + 1}, 3);
    const NodeLabel anc = FindPrefixAncestor(CtNodes(3, TimePeriod{t}), next);
    const Scalar s_anc = w.Drawn("encrypt.s_v[" + anc.ToString() + "]");
    EXPECT_NE(s_anc, s);

    const Ciphertext moved = UpdateCt(ct, TimePeriod{t + 1}, pp, w.rng());
    const Scalar s_new = w.Drawn("update_ct.s'");
    ExpectNodeExponent(pp, moved.nodes.at(next), s_anc + s_new);
    EXPECT_EQ(Dlog(moved.base->c1), -(w.Gamma() * (s + s_new)));
  }
}

TEST(DecryptTest, Examples) {
  World w(2, 3, 4);
  const PrivateKey sk = w.Key("01");
  const PrivateKey other = w.Key("10");
  const GroupElem m = w.Message(9);
  const Ciphertext wei = w.Enc(sk, 2, m, SchemeVariant::kWeiOriginal);
  EXPECT_EQ(w.Dec(wei, w.Dk(sk, 2)), m);
  const GroupElem off = w.Dec(wei, w.Dk(sk, 3));
  EXPECT_NE(off, m);
  EXPECT_FALSE((off / m).IsIdentity());

  const Ciphertext corrected = w.Enc(sk, 2, m, SchemeVariant::kCorrectedParallel);
  for (std::uint64_t t = 2; t < 8; ++t) EXPECT_EQ(w.Dec(corrected, w.Dk(sk, t)), m);

  EXPECT_EQ(CaughtCode([&] { w.Dec(wei, w.Dk(sk, 1)); }), ErrorCode::kRejected);
  EXPECT_EQ(CaughtCode([&] { w.Dec(wei, w.Dk(other, 2)); }), ErrorCode::kIdentityMismatch);
}

class VariantTest : public ::testing::TestWithParam<std::tuple<SchemeVariant, Backend>> {};

TEST_P(VariantTest, EqualTimeCorrectness) {
  const auto [variant, backend] = GetParam();
  const unsigned ell = backend == Backend::kMock ? 3 : 2;
  World w(2, ell, 31, backend);
  std::vector<PrivateKey> keys;
  for (const char* id : {"00", "01", "10", "11"}) keys.push_back(w.Key(id));
  for (std::uint64_t t = 0; t < (1u << ell); ++t) {
    for (const auto& sk : keys) {
      const GroupElem m = w.Message(t * 10 + sk.leaf);
      ASSERT_EQ(w.Dec(w.Enc(sk, t, m, variant), w.Dk(sk, t)), m)
          << "t=" << t << " id=" << sk.id.ToString();
    }
  }
}

TEST_P(VariantTest, LaterKeys) {
  const auto [variant, backend] = GetParam();
  const unsigned ell = backend == Backend::kMock ? 3 : 2;
  World w(1, ell, 32, backend);
  const PrivateKey sk = w.Key("1");
  const std::uint64_t periods = 1u << ell;
  std::vector<DecryptionKey> dks;
  for (std::uint64_t t = 0; t < periods; ++t) dks.push_back(w.Dk(sk, t));
  for (std::uint64_t t = 0; t < periods; ++t) {
    const GroupElem m = w.Message(100 + t);
    const Ciphertext ct = w.Enc(sk, t, m, variant);
    for (std::uint64_t later = t + 1; later < periods; ++later) {
      const bool recovered = w.Dec(ct, dks[later]) == m;
      // Only the original scheme loses the message once the period moves.
      EXPECT_EQ(recovered, variant != SchemeVariant::kWeiOriginal)
          << "t=" << t << " t'=" << later;
    }
  }
}

TEST_P(VariantTest, ChainedUpdates) {
  const auto [variant, backend] = GetParam();
  const unsigned ell = backend == Backend::kMock ? 4 : 3;
  World w(1, ell, 33, backend);
  const PrivateKey sk = w.Key("0");
  const std::uint64_t periods = 1u << ell;
  std::vector<DecryptionKey> dks;
  for (std::uint64_t t = 0; t < periods; ++t) dks.push_back(w.Dk(sk, t));
  std::mt19937_64 gen(7);
  const int chains = backend == Backend::kMock ? 40 : 6;
  for (int c = 0; c < chains; ++c) {
    std::uint64_t t = gen() % periods;
    const std::uint64_t start = t;
    const GroupElem m = w.Message(c);
    Ciphertext ct = w.Enc(sk, t, m, variant);
    for (int hop = 0; hop < 4; ++hop) {
      t += gen() % (periods - t);
      ct = UpdateCt(ct, TimePeriod{t}, w.pp(), w.rng());
      ASSERT_EQ(ct.nodes.size(), CtNodes(ell, TimePeriod{t}).size());
    }
    // The original scheme recovers only with a key for the starting period.
    for (std::uint64_t k = t; k < periods; ++k) {
      const bool expect = variant != SchemeVariant::kWeiOriginal || k == start;
      ASSERT_EQ(w.Dec(ct, dks[k]) == m, expect) << "start=" << start << " k=" << k;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    All, VariantTest,
    ::testing::Combine(::testing::ValuesIn(kAllVariants),
                       ::testing::Values(Backend::kMock, Backend::kCurve)),
    [](const auto& info) {
      return std::string(VariantName(std::get<0>(info.param))) + "_" +
             BackendName(std::get<1>(info.param));
    });

TEST(DelegationModeTest, VerbatimAgreesOnlyWhenNewBitsAreOnes) {
  World w(1, 3, 12);
  const PrivateKey sk = w.Key("0");
  const GroupElem m = w.Message(3);
  // From t=0 the ancestor of leaf 011 is 01 (new bit 1), and of leaf 010
  // it is also 01 (new bit 0).
  const Ciphertext ct = w.Enc(sk, 0, m, SchemeVariant::kCorrectedParallel);
  EXPECT_EQ(w.Dec(ct, w.Dk(sk, 3), DelegationMode::kVerbatim), m);
  EXPECT_NE(w.Dec(ct, w.Dk(sk, 2), DelegationMode::kVerbatim), m);
  EXPECT_EQ(w.Dec(ct, w.Dk(sk, 2), DelegationMode::kBitCorrected), m);
  EXPECT_EQ(ParseMode(ModeName(DelegationMode::kVerbatim)), DelegationMode::kVerbatim);
  EXPECT_EQ(ParseVariant("corrected"), SchemeVariant::kCorrectedParallel);
  EXPECT_EQ(CaughtCode([] { (void)ParseVariant("sue"); }), ErrorCode::kInvalidParameter);
}

TEST(RevocationPropertyTest, RevokedPathsNeverMeetTheCover) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    World w(3, 3, trial);
    std::vector<PrivateKey> keys;
    for (std::uint64_t i = 0; i < 8; ++i) {
      keys.push_back(GenKey(Identity(i, 3), w.mk(), w.st(), w.pp(), w.rng()));
    }
    std::map<std::uint64_t, std::uint64_t> revoked;
    for (auto& sk : keys) {
      if (gen() % 3 == 0) {
        const std::uint64_t from = gen() % 8;
        revoked[sk.leaf] = from;
        Revoke(sk.id, TimePeriod{from}, w.rl(), w.st());
      }
    }
    for (std::uint64_t t = 0; t < 8; ++t) {
      const NodeSet cover = KuNodes(w.st(), w.rl(), TimePeriod{t});
      for (const auto& sk : keys) {
        bool meets = false;
        for (const auto& x : Path(LeafLabel(sk.leaf, 3), 3)) meets |= cover.contains(x);
        const auto it = revoked.find(sk.leaf);
        EXPECT_EQ(meets, it == revoked.end() || it->second > t);
      }
    }
  }
}

}  // namespace
}  // namespace rsibe

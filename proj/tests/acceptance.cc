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


// Acceptance gate: one PASS/FAIL line per criterion; exits nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "rsibe/analysis.h"
#include "rsibe/codec.h"
#include "rsibe/error.h"

namespace rsibe {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::set<std::uint64_t> LeavesUnder(const NodeSet& nodes, unsigned depth) {
  std::set<std::uint64_t> out;
  for (std::uint64_t leaf = 0; leaf < (std::uint64_t{1} << depth); ++leaf) {
    for (const auto& n : nodes) {
      if (n.IsPrefixOf(NodeLabel(leaf, depth))) out.insert(leaf);
    }
  }
  return out;
}

Verdict TheoremOne() {
  Verdict v;
  const auto start = Clock::now();
  const FailureReport r =
      ReproduceFailure(3, 4, 1, SchemeVariant::kWeiOriginal, DelegationMode::kBitCorrected);
  const double secs = Seconds(start);
  v.Require(r.cells.size() == 136, "matrix has " + std::to_string(r.cells.size()) + " cells");
  std::size_t diag = 0, off = 0;
  for (const auto& c : r.cells) {
    const bool recovered = c.outcome == Outcome::kMessageRecovered;
    v.Require(recovered == (c.ct_time == c.key_time),
              "cell (" + std::to_string(c.ct_time.value) + "," +
                  std::to_string(c.key_time.value) + ") has the wrong outcome");
    diag += recovered;
    off += !recovered;
  }
  v.Require(diag == 16 && off == 120, "counts differ");
  v.Require(secs < 10.0, "took " + std::to_string(secs) + " s");
  if (v.pass) {
    v.detail = std::to_string(diag) + " recovered on the diagonal, " + std::to_string(off) +
               " wrong off it, " + std::to_string(secs) + " s";
  }
  return v;
}

Verdict ResidualExactness() {
  Verdict v;
  constexpr unsigned kN = 3, kEll = 4;
  std::size_t checked = 0;
  for (std::uint64_t t = 0; t < 16; ++t) {
    Randomness rng(500 + t, "acceptance.residual", true);
    auto [mk, pp, st, rl] =
        Setup(128, 1u << kN, 1u << kEll, BackendConfig{Backend::kMock, 128, true}, rng);
    const PrivateKey sk = GenKey(Identity::Parse("101"), mk, st, pp, rng);
    const GroupElem m = MessageFromSeed(Backend::kMock, t);
    const Ciphertext ct = Encrypt(sk.id, TimePeriod{t}, m, pp, SchemeVariant::kWeiOriginal, rng);
    const Scalar s = *rng.Last("encrypt.s");
    const NodeSet nodes = CtNodes(kEll, TimePeriod{t});
    const Scalar dlog_g = Dlog(pp.g.in_g2);
    for (std::uint64_t t2 = t + 1; t2 < 16; ++t2) {
      const NodeLabel anc = FindPrefixAncestor(nodes, TimeLeaf(TimePeriod{t2}, kEll));
      const Scalar s_anc = *rng.Last("encrypt.s_v[" + anc.ToString() + "]");
      const DecryptionKey dk =
          DeriveDk(sk, UpdateKey(TimePeriod{t2}, rl, mk, st, pp, rng), pp, rng);
      // No revocations, so the key update and private key meet at the root.
      const Scalar rho1 = *rng.Last("update_key.r_x1[]") + *rng.Last("derive_dk.r1");
      const GroupElem out = Decrypt(ct, dk, pp, rng);
      const Scalar fh = Dlog(HashTime(pp, TimePeriod{t2}, Group::kG1));
      v.Require(Dlog(out) - Dlog(m) == (s_anc - s) * rho1 * fh * dlog_g,
                "cell (" + std::to_string(t) + "," + std::to_string(t2) + ") residual differs");
      ++checked;
    }
  }
  const FailureReport r =
      ReproduceFailure(3, 4, 1, SchemeVariant::kWeiOriginal, DelegationMode::kBitCorrected);
  v.Require(r.residual_mismatches() == 0, "report flags residual mismatches");
  if (v.pass) v.detail = std::to_string(checked) + " off-diagonal cells exact";
  return v;
}

Verdict LemmaOne() {
  Verdict v;
  std::size_t pairs = 0;
  for (unsigned ell = 1; ell <= 5; ++ell) {
    const std::uint64_t periods = std::uint64_t{1} << ell;
    for (std::uint64_t t = 0; t < periods; ++t) {
      const NodeSet nodes = CtNodes(ell, TimePeriod{t});
      for (std::uint64_t t2 = t + 1; t2 < periods; ++t2) {
        const NodeLabel target = TimeLeaf(TimePeriod{t2}, ell);
        std::size_t prefixes = 0;
        NodeLabel found;
        for (const auto& c : nodes) {
          if (c.IsPrefixOf(target)) {
            ++prefixes;
            found = c;
          }
        }
        v.Require(prefixes == 1, "ancestor count != 1");
        v.Require(!(found == TimeLeaf(TimePeriod{t}, ell)), "ancestor is v_T");
        try {
          v.Require(FindPrefixAncestor(nodes, target) == found, "lookup disagrees");
        } catch (const rsibe::Error&) {
          v.Require(false, "lookup threw");
        }
        ++pairs;
      }
    }
  }
  if (v.pass) v.detail = std::to_string(pairs) + " pairs, zero exceptions";
  return v;
}

Verdict CtNodesCoverage() {
  Verdict v;
  std::size_t witnesses = 0;
  for (unsigned ell = 1; ell <= 5; ++ell) {
    const std::uint64_t periods = std::uint64_t{1} << ell;
    for (std::uint64_t t = 0; t < periods; ++t) {
      std::set<std::uint64_t> future;
      for (std::uint64_t x = t; x < periods; ++x) future.insert(x);
      v.Require(LeavesUnder(CtNodes(ell, TimePeriod{t}), ell) == future,
                "corrected cover wrong at ell=" + std::to_string(ell) + " t=" + std::to_string(t));

      // Wei's set enumerated from its definition over all nodes.
      const NodeLabel leaf = TimeLeaf(TimePeriod{t}, ell);
      NodeSet literal{leaf};
      for (unsigned d = 1; d <= ell; ++d) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << d); ++x) {
          const NodeLabel node(x, d);
          if (node.Parent().IsPrefixOf(leaf) && !node.IsPrefixOf(leaf)) literal.insert(node);
        }
      }
      const auto literal_cover = LeavesUnder(literal, ell);
      const auto wei_cover = LeavesUnder(CtNodesWei(ell, TimePeriod{t}), ell);
      if (!literal_cover.empty() && *literal_cover.begin() < t) {
        ++witnesses;
        v.Require(!wei_cover.empty() && *wei_cover.begin() < t, "flaw not reproduced");
      }
    }
  }
  const NodeSet witness = CtNodesWei(1, TimePeriod{1});
  v.Require(witness == NodeSet{NodeLabel::Parse("0"), NodeLabel::Parse("1")},
            "ell=1, t=1 witness is not {0, 1}");
  if (v.pass) {
    v.detail = "exact cover for all t, ell<=5; " + std::to_string(witnesses) +
               " flawed Wei sets incl. {0, 1} at ell=1, t=1";
  }
  return v;
}

Verdict KuNodesOracle() {
  Verdict v;
  RevocationTree tree(3);
  for (std::uint64_t i = 0; i < 8; ++i) tree.AssignLeaf(Identity(i, 3));
  std::mt19937_64 gen(2);
  std::size_t cases = 0;
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    RevocationList rl;
    std::vector<std::uint64_t> from(8, 0);
    for (std::uint64_t i = 0; i < 8; ++i) {
      if (mask >> i & 1) {
        from[i] = gen() % 8;
        rl.Add(Identity(i, 3), TimePeriod{from[i]});
      }
    }
    for (std::uint64_t t : {0, 2, 5, 7}) {
      std::set<std::uint64_t> expected;
      for (std::uint64_t i = 0; i < 8; ++i) {
        if (!(mask >> i & 1) || from[i] > t) expected.insert(i);
      }
      v.Require(LeavesUnder(KuNodes(tree, rl, TimePeriod{t}), 3) == expected,
                "cover wrong for mask " + std::to_string(mask));
      ++cases;
    }
  }
  if (v.pass) v.detail = std::to_string(cases) + " (subset, time) cases exact";
  return v;
}

Verdict CorrectedCorrectness() {
  Verdict v;
  const FailureReport r = ReproduceFailure(3, 4, 3, SchemeVariant::kCorrectedParallel,
                                           DelegationMode::kBitCorrected);
  v.Require(r.cells.size() == 136 && r.recovered() == 136,
            std::to_string(r.recovered()) + "/136 cells recovered");

  Randomness rng(77, "acceptance.chains");
  auto [mk, pp, st, rl] = Setup(128, 8, 16, BackendConfig{}, rng);
  const PrivateKey sk = GenKey(Identity::Parse("110"), mk, st, pp, rng);
  std::vector<DecryptionKey> dks;
  for (std::uint64_t t = 0; t < 16; ++t) {
    dks.push_back(DeriveDk(sk, UpdateKey(TimePeriod{t}, rl, mk, st, pp, rng), pp, rng));
  }
  std::mt19937_64 gen(77);
  std::size_t failures = 0;
  for (int chain = 0; chain < 20; ++chain) {
    const unsigned hops = 3 + gen() % 3;
    std::uint64_t t = gen() % 6;
    const GroupElem m = MessageFromSeed(Backend::kMock, 1000 + chain);
    Ciphertext ct = Encrypt(sk.id, TimePeriod{t}, m, pp, SchemeVariant::kCorrectedParallel, rng);
    for (unsigned h = 0; h < hops; ++h) {
      t += 1 + gen() % 3;
      if (t > 15) t = 15;
      ct = UpdateCt(ct, TimePeriod{t}, pp, rng);
    }
    for (std::uint64_t k = t; k < 16; ++k) failures += !(Decrypt(ct, dks[k], pp, rng) == m);
  }
  v.Require(failures == 0, std::to_string(failures) + " chain decryptions failed");
  if (v.pass) v.detail = "136/136 cells and 20 chains of 3-5 hops, zero failures";
  return v;
}

Verdict Rollback() {
  Verdict v;
  // The attacker side sees only serialized public parameters and ciphertext.
  std::string pp_bytes, ct_bytes;
  DecryptionKey old_key;
  GroupElem m;
  {
    Randomness rng(2025, "acceptance.rollback");
    auto [mk, pp, st, rl] = Setup(128, 8, 8, BackendConfig{}, rng);
    const PrivateKey sk = GenKey(Identity::Parse("011"), mk, st, pp, rng);
    old_key = DeriveDk(sk, UpdateKey(TimePeriod{0}, rl, mk, st, pp, rng), pp, rng);
    Revoke(sk.id, TimePeriod{1}, rl, st);
    m = MessageFromSeed(Backend::kMock, 2025);
    const Ciphertext ct = Encrypt(sk.id, TimePeriod{3}, m, pp, SchemeVariant::kNaiveSharedS, rng);
    pp_bytes = ToJson(pp).dump();
    ct_bytes = ToJson(ct, pp).dump();
  }
  const PublicParams pp = PublicParamsFromJson(Json::parse(pp_bytes));
  const Ciphertext ct = CiphertextFromJson(Json::parse(ct_bytes), pp);
  const auto forgery = RollbackAttack(ct, TimePeriod{0}, pp);
  v.Require(forgery.has_value(), "no forgery for NAIVE");
  v.Require(forgery && OpenForgery(*forgery, old_key) == m, "forgery did not recover m");

  std::size_t control_recovered = 0;
  for (auto variant : {SchemeVariant::kWeiOriginal, SchemeVariant::kCorrectedParallel}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      control_recovered +=
          RunRollbackTrial(3, 3, TimePeriod{3}, TimePeriod{0}, variant, seed).recovered;
    }
  }
  v.Require(control_recovered == 0,
            std::to_string(control_recovered) + " control trials recovered m");
  if (v.pass) v.detail = "NAIVE recovered from bytes; WEI 0/20, CORRECTED 0/20";
  return v;
}

Verdict RevocationSoundness() {
  Verdict v;
  Randomness rng(8, "acceptance.revocation");
  auto [mk, pp, st, rl] = Setup(128, 8, 4, BackendConfig{}, rng);
  std::vector<PrivateKey> keys;
  for (std::uint64_t i = 0; i < 8; ++i) keys.push_back(GenKey(Identity(i, 3), mk, st, pp, rng));
  const Identity victim = keys[5].id;
  Revoke(victim, TimePeriod{2}, rl, st);
  for (std::uint64_t t = 0; t < 4; ++t) {
    const KeyUpdate ku = UpdateKey(TimePeriod{t}, rl, mk, st, pp, rng);
    for (const auto& sk : keys) {
      const bool should_work = !(sk.id == victim) || t < 2;
      try {
        const DecryptionKey dk = DeriveDk(sk, ku, pp, rng);
        const GroupElem msg = MessageFromSeed(Backend::kMock, t * 8 + sk.leaf);
        const Ciphertext ct = Encrypt(sk.id, TimePeriod{t}, msg, pp,
                                      SchemeVariant::kCorrectedParallel, rng);
        v.Require(should_work, "revoked user derived a key at t=" + std::to_string(t));
        v.Require(Decrypt(ct, dk, pp, rng) == msg, "derived key does not decrypt");
      } catch (const rsibe::Error& e) {
        v.Require(!should_work && e.code() == ErrorCode::kRevoked,
                  "unexpected error for user " + sk.id.ToString());
      }
    }
  }
  if (v.pass) v.detail = "victim ok at t=0,1, Revoked at t=2,3; 7 others ok at all t";
  return v;
}

Verdict BackendAgreement() {
  Verdict v;
  double curve_secs = 0;
  std::size_t steps = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto mock = RunScenario(seed, Backend::kMock);
    const auto start = Clock::now();
    const auto curve = RunScenario(seed, Backend::kCurve);
    curve_secs += Seconds(start);
    v.Require(mock == curve, "scenario " + std::to_string(seed) + " differs");
    steps += mock.size();
  }
  v.Require(curve_secs < 120.0, "curve run took " + std::to_string(curve_secs) + " s");
  if (v.pass) {
    v.detail = "50 scripts, " + std::to_string(steps) + " steps identical; curve " +
               std::to_string(curve_secs) + " s";
  }
  return v;
}

Verdict Rerandomization() {
  Verdict v;
  Randomness rng(31, "acceptance.rerandomize");
  auto [mk, pp, st, rl] = Setup(128, 4, 16, BackendConfig{Backend::kMock, 128, true}, rng);
  std::mt19937_64 gen(31);
  std::size_t corrected_ok = 0, wei_flagged = 0;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t t = gen() % 15;
    const std::uint64_t t2 = t + gen() % (16 - t);
    const Ciphertext ct = Encrypt(Identity::Parse("10"), TimePeriod{t},
                                  MessageFromSeed(Backend::kMock, i), pp,
                                  SchemeVariant::kCorrectedParallel, rng);
    corrected_ok += CheckRerandomization(ct, UpdateCt(ct, TimePeriod{t2}, pp, rng), pp);

    const std::uint64_t later = t + 1 + gen() % (15 - t);
    const Ciphertext wct = Encrypt(Identity::Parse("10"), TimePeriod{t},
                                   MessageFromSeed(Backend::kMock, i), pp,
                                   SchemeVariant::kWeiOriginal, rng);
    wei_flagged += !CheckRerandomization(wct, UpdateCt(wct, TimePeriod{later}, pp, rng), pp);
  }
  v.Require(corrected_ok == 100, std::to_string(corrected_ok) + "/100 corrected coherent");
  v.Require(wei_flagged == 100, std::to_string(wei_flagged) + "/100 Wei flagged");
  if (v.pass) v.detail = "corrected 100/100 coherent, Wei 100/100 flagged";
  return v;
}

Verdict SizeCensusCheck() {
  Verdict v;
  Randomness rng(4, "acceptance.census");
  auto [mk, pp, st, rl] = Setup(128, 8, 8, BackendConfig{}, rng);
  const Ciphertext ct = Encrypt(Identity::Parse("001"), TimePeriod{3},
                                MessageFromSeed(Backend::kMock, 1), pp,
                                SchemeVariant::kWeiOriginal, rng);
  const CiphertextSize real = CountElements(ct);
  const SizeCensus census = CensusSizes(3, 3, SchemeVariant::kWeiOriginal);
  v.Require(real.total() == 7 && real.gt_elements == 1, "real ciphertext is not 6 + 1 GT");
  v.Require(census.ciphertexts[3].total() == 7, "census disagrees at t=3");

  for (unsigned n = 1; n <= 5; ++n) {
    Randomness r(n, "acceptance.census.keys");
    auto sys = Setup(128, std::uint64_t{1} << n, 4, BackendConfig{}, r);
    const PrivateKey sk = GenKey(Identity(0, n), sys.mk, sys.st, sys.pp, r);
    v.Require(sk.entries.size() == n + 1 &&
                  CensusSizes(n, 2, SchemeVariant::kWeiOriginal).private_key_entries == n + 1,
              "private key entries != n+1 for n=" + std::to_string(n));
  }

  struct Spot {
    unsigned ell;
    SchemeVariant variant;
    std::uint64_t t;
    std::size_t hand_count;
  };
  const Spot spots[] = {
      {3, SchemeVariant::kWeiOriginal, 3, 7},         // 3 + 011:1 + 1:3
      {3, SchemeVariant::kWeiOriginal, 0, 10},        // 3 + 1 + 1 + 2 + 3
      {3, SchemeVariant::kWeiOriginal, 7, 4},         // 3 + 111:1
      {2, SchemeVariant::kCorrectedParallel, 1, 9},   // 01:1+3, 1:2+3
      {4, SchemeVariant::kNaiveSharedS, 5, 10},       // 3 + 0101:1 + 011:2 + 1:4
  };
  for (const auto& s : spots) {
    v.Require(CensusSizes(2, s.ell, s.variant).ciphertexts.at(s.t).total() == s.hand_count,
              "spot case ell=" + std::to_string(s.ell) + " t=" + std::to_string(s.t));
  }
  if (v.pass) v.detail = "7 elements at ell=3, t=3 (6 in G1 + C0 in GT); n+1 entries; 5/5 spots";
  return v;
}

}  // namespace
}  // namespace rsibe

int main() {
  using rsibe::Verdict;
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"Theorem-1 reproduction", rsibe::TheoremOne},
      {"Residual exactness", rsibe::ResidualExactness},
      {"Lemma-1 property", rsibe::LemmaOne},
      {"CTNodes coverage oracle", rsibe::CtNodesCoverage},
      {"KUNodes oracle", rsibe::KuNodesOracle},
      {"Corrected-variant correctness", rsibe::CorrectedCorrectness},
      {"Rollback attack demonstration", rsibe::Rollback},
      {"Revocation soundness", rsibe::RevocationSoundness},
      {"Backend agreement", rsibe::BackendAgreement},
      {"Re-randomization structure", rsibe::Rerandomization},
      {"Size census", rsibe::SizeCensusCheck},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}

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

#include <numeric>
#include <random>

#include "rsibe/analysis.h"
#include "rsibe/codec.h"
#include "test_util.h"

namespace rsibe {
namespace {

using testing_util::CaughtCode;
using testing_util::S;

const FailureCell& CellAt(const FailureReport& r, std::uint64_t t, std::uint64_t t2) {
  for (const auto& c : r.cells) {
    if (c.ct_time.value == t && c.key_time.value == t2) return c;
  }
  throw std::out_of_range("no such cell");
}

TEST(ReproduceFailureTest, WeiMatrixIsDiagonal) {
  const FailureReport r = ReproduceFailure(3, 4, 1, SchemeVariant::kWeiOriginal,
                                           DelegationMode::kBitCorrected);
  ASSERT_EQ(r.cells.size(), 136u);
  EXPECT_EQ(r.recovered(), 16u);
  EXPECT_EQ(r.wrong(), 120u);
  EXPECT_EQ(r.residual_mismatches(), 0u);
  EXPECT_TRUE(r.MatchesExpectation());
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.outcome == Outcome::kMessageRecovered, c.ct_time == c.key_time);
    EXPECT_TRUE(c.residual_ok.has_value());
  }
  EXPECT_EQ(CellAt(r, 0, 1).residual_ok, true);
}

TEST(ReproduceFailureTest, OtherVariantsRecoverEverywhere) {
  for (auto v : {SchemeVariant::kCorrectedParallel, SchemeVariant::kNaiveSharedS}) {
    const FailureReport r = ReproduceFailure(3, 4, 2, v, DelegationMode::kBitCorrected);
    EXPECT_EQ(r.recovered(), 136u) << VariantName(v);
    EXPECT_TRUE(r.MatchesExpectation());
  }
}

TEST(ReproduceFailureTest, ResidualChecksOnlyForMockBitCorrected) {
  const FailureReport verbatim =
      ReproduceFailure(2, 3, 3, SchemeVariant::kWeiOriginal, DelegationMode::kVerbatim);
  for (const auto& c : verbatim.cells) EXPECT_FALSE(c.residual_ok.has_value());
  EXPECT_EQ(verbatim.recovered(), 8u);

  const FailureReport curve = ReproduceFailure(
      1, 2, 3, SchemeVariant::kWeiOriginal, DelegationMode::kBitCorrected, Backend::kCurve);
  for (const auto& c : curve.cells) EXPECT_FALSE(c.residual_ok.has_value());
  EXPECT_TRUE(curve.MatchesExpectation());
}

TEST(ReproduceFailureTest, HoldsForManySeeds) {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    for (auto v : {SchemeVariant::kWeiOriginal, SchemeVariant::kNaiveSharedS,
                   SchemeVariant::kCorrectedParallel}) {
      const FailureReport r = ReproduceFailure(2, 3, seed, v, DelegationMode::kBitCorrected);
      ASSERT_TRUE(r.MatchesExpectation()) << seed << " " << VariantName(v);
      ASSERT_EQ(r.residual_mismatches(), 0u);
    }
  }
}

// Recomputes the residual of a Wei decryption from the trace, without the
// analysis module: out / m = e(F_h(t'), g)^{(s_v~ - s) * rho_1}.
TEST(ResidualTest, IndependentRecomputation) {
  constexpr unsigned kEll = 3;
  for (std::uint64_t t = 0; t < 8; ++t) {
    for (std::uint64_t t2 = t + 1; t2 < 8; ++t2) {
      Randomness rng(1000 + t * 8 + t2, "residual", true);
      auto [mk, pp, st, rl] = rsibe::Setup(128, 4, 8, BackendConfig{Backend::kMock, 128, true}, rng);
      const PrivateKey sk = GenKey(Identity::Parse("10"), mk, st, pp, rng);
      const GroupElem m = MessageFromSeed(Backend::kMock, t2);
      const Ciphertext ct = Encrypt(sk.id, TimePeriod{t}, m, pp, SchemeVariant::kWeiOriginal, rng);
      const Scalar s = *rng.Last("encrypt.s");
      const NodeLabel anc =
          FindPrefixAncestor(CtNodes(kEll, TimePeriod{t}), TimeLeaf(TimePeriod{t2}, kEll));
      const Scalar s_anc = *rng.Last("encrypt.s_v[" + anc.ToString() + "]");

      const KeyUpdate ku = UpdateKey(TimePeriod{t2}, rl, mk, st, pp, rng);
      const DecryptionKey dk = DeriveDk(sk, ku, pp, rng);
      const Scalar rho1 = *rng.Last("update_key.r_x1[]") + *rng.Last("derive_dk.r1");
      const GroupElem out = Decrypt(ct, dk, pp, rng);

      const GroupElem expected =
          Pow(Pair(HashTime(pp, TimePeriod{t2}, Group::kG1), pp.g.in_g2), (s_anc - s) * rho1);
      ASSERT_EQ(out / m, expected) << t << "->" << t2;
      ASSERT_FALSE(expected.IsIdentity());
    }
  }
}

TEST(SolveLinearSystemTest, SolvesAndDetectsInconsistency) {
  // x + 2y = 5, 3x - y = 1  ->  x = 1, y = 2.
  auto sol = SolveLinearSystem({{S(1), S(2)}, {S(3), S(-1)}}, {S(5), S(1)});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ((*sol)[0], S(1));
  EXPECT_EQ((*sol)[1], S(2));
  EXPECT_FALSE(SolveLinearSystem({{S(1), S(1)}, {S(2), S(2)}}, {S(1), S(3)}).has_value());
  EXPECT_EQ(CaughtCode([] { (void)SolveLinearSystem({{S(1)}, {S(1), S(2)}}, {S(0), S(0)}); }),
            ErrorCode::kInvalidParameter);
}

TEST(SolveLinearSystemTest, RandomSystemsAreSatisfied) {
  Randomness rng(6, "linsys");
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + gen() % 5, cols = 1 + gen() % 6;
    std::vector<std::vector<Scalar>> a(rows, std::vector<Scalar>(cols));
    std::vector<Scalar> x(cols);
    for (auto& v : x) v = rng.SampleNonzero("x");
    for (auto& row : a) {
      for (auto& v : row) v = gen() % 3 == 0 ? Scalar() : S(static_cast<std::int64_t>(gen() % 5));
    }
    std::vector<Scalar> b(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) b[r] += a[r][c] * x[c];
    }
    const auto sol = SolveLinearSystem(a, b);
    ASSERT_TRUE(sol.has_value());
    for (std::size_t r = 0; r < rows; ++r) {
      Scalar acc;
      for (std::size_t c = 0; c < cols; ++c) acc += a[r][c] * (*sol)[c];
      ASSERT_EQ(acc, b[r]);
    }
  }
}

// Exact rank over the rationals by fraction-free elimination; entries stay
// tiny for the 0/1 matrices used here.
std::size_t IntegerRank(std::vector<std::vector<long long>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      const long long f = m[r][c], piv = m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] * piv - m[rank][k] * f;
      long long g = 0;
      for (auto v : m[r]) g = std::gcd(g, v);
      if (g > 1) {
        for (auto& v : m[r]) v /= g;
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<long long> LabelRow(const NodeLabel& v, unsigned ell) {
  std::vector<long long> row(ell + 1, 0);
  row[0] = 1;
  for (unsigned j = 1; j <= v.depth(); ++j) row[j] = v.Bit(j - 1);
  return row;
}

// Whether h-exponent vector of leaf(target) lies in the span of the public
// components of a ciphertext at ct_time.
bool Constructible(unsigned ell, std::uint64_t ct_time, std::uint64_t target) {
  std::vector<std::vector<long long>> rows;
  for (const auto& v : CtNodes(ell, TimePeriod{ct_time})) {
    rows.push_back(LabelRow(v, ell));
    for (unsigned j = v.depth() + 1; j <= ell; ++j) {
      std::vector<long long> e(ell + 1, 0);
      e[j] = 1;
      rows.push_back(e);
    }
  }
  const std::size_t r = IntegerRank(rows);
  rows.push_back(LabelRow(TimeLeaf(TimePeriod{target}, ell), ell));
  return IntegerRank(rows) == r;
}

TEST(RollbackAttackTest, NaiveExample) {
  const AttackTrial trial = RunRollbackTrial(3, 3, TimePeriod{3}, TimePeriod{0},
                                             SchemeVariant::kNaiveSharedS, 1);
  EXPECT_TRUE(trial.constructible);
  EXPECT_TRUE(trial.recovered);
  for (const auto& term : trial.terms) {
    EXPECT_TRUE(term.source.rfind("C[011]", 0) == 0 || term.source.rfind("C[1]", 0) == 0)
        << term.source;
  }
  EXPECT_EQ(trial.base_source, "(C0, C1, C2)");
}

TEST(RollbackAttackTest, ControlsFail) {
  for (auto v : {SchemeVariant::kWeiOriginal, SchemeVariant::kCorrectedParallel}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const AttackTrial trial = RunRollbackTrial(3, 3, TimePeriod{3}, TimePeriod{0}, v, seed);
      EXPECT_TRUE(trial.constructible);
      EXPECT_FALSE(trial.recovered) << VariantName(v) << " seed " << seed;
    }
  }
}

TEST(RollbackAttackTest, TargetMustBeInThePast) {
  Randomness rng(1);
  auto [mk, pp, st, rl] = rsibe::Setup(128, 2, 8, BackendConfig{}, rng);
  const Ciphertext ct = Encrypt(Identity::Parse("0"), TimePeriod{3}, MessageFromSeed(Backend::kMock, 1),
                                pp, SchemeVariant::kNaiveSharedS, rng);
  EXPECT_EQ(CaughtCode([&] { (void)RollbackAttack(ct, TimePeriod{3}, pp); }),
            ErrorCode::kInvalidTarget);
  EXPECT_EQ(CaughtCode([&] { (void)RollbackAttack(ct, TimePeriod{5}, pp); }),
            ErrorCode::kInvalidTarget);
  // The last period holds only its own leaf, from which nothing earlier follows.
  const Ciphertext last = Encrypt(Identity::Parse("0"), TimePeriod{7},
                                  MessageFromSeed(Backend::kMock, 1), pp,
                                  SchemeVariant::kNaiveSharedS, rng);
  EXPECT_FALSE(RollbackAttack(last, TimePeriod{6}, pp).has_value());
}

TEST(RollbackAttackTest, VariantMatrixUpToEllFour) {
  for (unsigned ell = 1; ell <= 4; ++ell) {
    const std::uint64_t periods = std::uint64_t{1} << ell;
    for (std::uint64_t t = 1; t < periods; ++t) {
      for (std::uint64_t target = 0; target < t; ++target) {
        const bool expect = Constructible(ell, t, target);
        const AttackTrial naive = RunRollbackTrial(2, ell, TimePeriod{t}, TimePeriod{target},
                                                   SchemeVariant::kNaiveSharedS, t * 31 + target);
        ASSERT_EQ(naive.constructible, expect) << ell << ":" << t << "->" << target;
        ASSERT_EQ(naive.recovered, expect);
        for (auto v : {SchemeVariant::kWeiOriginal, SchemeVariant::kCorrectedParallel}) {
          const AttackTrial control =
              RunRollbackTrial(2, ell, TimePeriod{t}, TimePeriod{target}, v, t * 31 + target);
          ASSERT_EQ(control.constructible, expect);
          ASSERT_FALSE(control.recovered) << VariantName(v);
        }
      }
    }
  }
}

TEST(RollbackAttackTest, ReportCoversAllVariants) {
  const AttackReport report = DemonstrateRollback(2, 3, TimePeriod{3}, TimePeriod{0}, 50, 4);
  ASSERT_EQ(report.trials.size(), 12u);
  for (const auto& trial : report.trials) {
    EXPECT_EQ(trial.recovered, trial.variant == SchemeVariant::kNaiveSharedS);
  }
  const Json j = ToJson(report);
  EXPECT_EQ(j["schema"], kSchemaVersion);
}

class RerandomizationTest : public ::testing::Test {
 protected:
  RerandomizationTest()
      : rng_(17, "rerandomize"),
        sys_(rsibe::Setup(128, 4, 16, BackendConfig{Backend::kMock, 128, true}, rng_)) {}

  Ciphertext Enc(std::uint64_t t, SchemeVariant v) {
    return Encrypt(Identity::Parse("01"), TimePeriod{t}, MessageFromSeed(Backend::kMock, t),
                   sys_.pp, v, rng_);
  }

  Randomness rng_;
  SetupResult sys_;
};

TEST_F(RerandomizationTest, Examples) {
  const auto& pp = sys_.pp;
  for (auto v : {SchemeVariant::kWeiOriginal, SchemeVariant::kNaiveSharedS,
                 SchemeVariant::kCorrectedParallel}) {
    const Ciphertext fresh = Enc(4, v);
    EXPECT_TRUE(CheckRerandomization(fresh, fresh, pp)) << VariantName(v);
    EXPECT_TRUE(CheckRerandomization(fresh, UpdateCt(fresh, TimePeriod{4}, pp, rng_), pp));
    const bool later = CheckRerandomization(fresh, UpdateCt(fresh, TimePeriod{9}, pp, rng_), pp);
    EXPECT_EQ(later, v != SchemeVariant::kWeiOriginal) << VariantName(v);
  }
}

TEST_F(RerandomizationTest, RandomUpdates) {
  std::mt19937_64 gen(4);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t t = gen() % 15;
    const std::uint64_t t2 = t + 1 + gen() % (15 - t);
    for (auto v : {SchemeVariant::kWeiOriginal, SchemeVariant::kNaiveSharedS,
                   SchemeVariant::kCorrectedParallel}) {
      const Ciphertext ct = Enc(t, v);
      const Ciphertext moved = UpdateCt(ct, TimePeriod{t2}, sys_.pp, rng_);
      ASSERT_EQ(CheckRerandomization(ct, moved, sys_.pp), v != SchemeVariant::kWeiOriginal);
    }
  }
}

TEST_F(RerandomizationTest, TamperingIsDetected) {
  const Ciphertext ct = Enc(2, SchemeVariant::kCorrectedParallel);
  Ciphertext bad = UpdateCt(ct, TimePeriod{5}, sys_.pp, rng_);
  auto& comp = bad.nodes.rbegin()->second;  // node "1", which has a tail
  comp.tail.at(0) *= sys_.pp.h[comp.label.depth() + 1].in_g1;
  EXPECT_FALSE(CheckRerandomization(ct, bad, sys_.pp));
  Ciphertext dropped = UpdateCt(ct, TimePeriod{5}, sys_.pp, rng_);
  dropped.nodes.erase(dropped.nodes.begin());
  EXPECT_FALSE(CheckRerandomization(ct, dropped, sys_.pp));
}

TEST(RerandomizationCurveTest, RequiresMock) {
  Randomness rng(1);
  auto [mk, pp, st, rl] = rsibe::Setup(128, 2, 2, BackendConfig{Backend::kCurve}, rng);
  const Ciphertext ct = Encrypt(Identity::Parse("1"), TimePeriod{0},
                                MessageFromSeed(Backend::kCurve, 1), pp,
                                SchemeVariant::kCorrectedParallel, rng);
  EXPECT_EQ(CaughtCode([&] { (void)CheckRerandomization(ct, ct, pp); }),
            ErrorCode::kRequiresMockBackend);
}

TEST(CensusTest, SpotCases) {
  auto total = [](unsigned ell, SchemeVariant v, std::uint64_t t) {
    return CensusSizes(3, ell, v).ciphertexts.at(t).total();
  };
  // Hand counts: 3 base elements plus, per node, c0 and its tail.
  EXPECT_EQ(total(3, SchemeVariant::kWeiOriginal, 3), 7u);   // 011:1, 1:3
  EXPECT_EQ(total(3, SchemeVariant::kWeiOriginal, 0), 10u);  // 000:1, 001:1, 01:2, 1:3
  EXPECT_EQ(total(3, SchemeVariant::kWeiOriginal, 7), 4u);   // 111:1
  EXPECT_EQ(total(2, SchemeVariant::kCorrectedParallel, 1), 9u);  // 01:1+3, 1:2+3
  EXPECT_EQ(total(4, SchemeVariant::kNaiveSharedS, 5), 10u);  // 0101:1, 011:2, 1:4

  const SizeCensus c = CensusSizes(3, 3, SchemeVariant::kWeiOriginal);
  EXPECT_EQ(c.ciphertexts.at(3).gt_elements, 1u);
  EXPECT_EQ(c.ciphertexts.at(3).source_elements, 6u);
  EXPECT_EQ(c.private_key_elements, 8u);
  EXPECT_EQ(c.decryption_key_elements, 3u);
  for (unsigned n = 1; n <= 6; ++n) {
    EXPECT_EQ(CensusSizes(n, 2, SchemeVariant::kWeiOriginal).private_key_entries, n + 1);
  }
}

TEST(CensusTest, CorrectedAddsThreePerNodeAndDropsBase) {
  for (unsigned ell = 1; ell <= 5; ++ell) {
    const SizeCensus wei = CensusSizes(2, ell, SchemeVariant::kWeiOriginal);
    const SizeCensus cor = CensusSizes(2, ell, SchemeVariant::kCorrectedParallel);
    for (std::size_t t = 0; t < wei.ciphertexts.size(); ++t) {
      EXPECT_EQ(cor.ciphertexts[t].total() + 3,
                wei.ciphertexts[t].total() + 3 * wei.ciphertexts[t].nodes);
    }
  }
}

TEST(CensusTest, FormulaMatchesRealObjects) {
  Randomness rng(8);
  auto [mk, pp, st, rl] = rsibe::Setup(128, 8, 16, BackendConfig{}, rng);
  const PrivateKey sk = GenKey(Identity::Parse("011"), mk, st, pp, rng);
  for (auto v : {SchemeVariant::kWeiOriginal, SchemeVariant::kNaiveSharedS,
                 SchemeVariant::kCorrectedParallel}) {
    const SizeCensus c = CensusSizes(3, 4, v);
    EXPECT_EQ(sk.entries.size(), c.private_key_entries);
    for (std::uint64_t t = 0; t < 16; ++t) {
      const CiphertextSize real = CountElements(
          Encrypt(sk.id, TimePeriod{t}, MessageFromSeed(Backend::kMock, t), pp, v, rng));
      EXPECT_EQ(real.total(), c.ciphertexts[t].total());
      EXPECT_EQ(real.gt_elements, c.ciphertexts[t].gt_elements);
      EXPECT_EQ(real.nodes, c.ciphertexts[t].nodes);
    }
  }
}

TEST(ScenarioTest, DeterministicAndVaried) {
  std::set<std::string> endings;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto log = RunScenario(seed, Backend::kMock);
    EXPECT_EQ(log, RunScenario(seed, Backend::kMock));
    for (const auto& line : log) {
      const auto colon = line.rfind(": ");
      if (colon != std::string::npos) endings.insert(line.substr(colon + 2));
    }
  }
  // Every kind of outcome shows up somewhere in twenty scripts.
  EXPECT_EQ(endings.size(), 4u);
}

}  // namespace
}  // namespace rsibe

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

#include "rsibe/tree.h"
#include "test_util.h"

namespace rsibe {
namespace {

using testing_util::CaughtCode;

NodeSet Labels(std::initializer_list<const char*> bits) {
  NodeSet out;
  for (const char* b : bits) out.insert(NodeLabel::Parse(b));
  return out;
}

// All nodes of a complete binary tree of the given depth, root included.
std::vector<NodeLabel> AllNodes(unsigned depth) {
  std::vector<NodeLabel> out;
  for (unsigned d = 0; d <= depth; ++d) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) out.emplace_back(v, d);
  }
  return out;
}

// Leaf indices under `node` in a depth-`depth` tree, by enumeration.
std::set<std::uint64_t> LeavesUnder(const NodeLabel& node, unsigned depth) {
  std::set<std::uint64_t> out;
  for (std::uint64_t leaf = 0; leaf < (std::uint64_t{1} << depth); ++leaf) {
    if (node.IsPrefixOf(NodeLabel(leaf, depth))) out.insert(leaf);
  }
  return out;
}

std::set<std::uint64_t> LeavesUnder(const NodeSet& nodes, unsigned depth) {
  std::set<std::uint64_t> out;
  for (const auto& n : nodes) {
    auto sub = LeavesUnder(n, depth);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

bool PairwiseDisjoint(const NodeSet& nodes) {
  for (const auto& a : nodes) {
    for (const auto& b : nodes) {
      if (!(a == b) && a.IsPrefixOf(b)) return false;
    }
  }
  return true;
}

// The unique minimal cover of an allowed leaf set: every node whose leaves
// are all allowed while its parent's are not.
NodeSet MinimalCover(const std::set<std::uint64_t>& allowed, unsigned depth) {
  auto inside = [&](const NodeLabel& n) {
    for (auto leaf : LeavesUnder(n, depth)) {
      if (!allowed.contains(leaf)) return false;
    }
    return true;
  };
  NodeSet out;
  for (const auto& n : AllNodes(depth)) {
    if (inside(n) && (n.IsRoot() || !inside(n.Parent()))) out.insert(n);
  }
  return out;
}

TEST(BitStringTest, ParseAndDisplay) {
  EXPECT_EQ(NodeLabel::Parse("101"), NodeLabel(5, 3));
  EXPECT_EQ(NodeLabel::Parse("").depth(), 0u);
  EXPECT_EQ(NodeLabel::Parse("ε"), NodeLabel::Root());
  EXPECT_EQ(NodeLabel::Root().Display(), "ε");
  EXPECT_EQ(NodeLabel::Parse("0010").ToString(), "0010");
  EXPECT_TRUE(NodeLabel::Parse("01").IsPrefixOf(NodeLabel::Parse("011")));
  EXPECT_TRUE(NodeLabel::Parse("01").IsPrefixOf(NodeLabel::Parse("01")));
  EXPECT_FALSE(NodeLabel::Parse("011").IsPrefixOf(NodeLabel::Parse("01")));
  EXPECT_LT(NodeLabel::Parse("0"), NodeLabel::Parse("00"));
  EXPECT_LT(NodeLabel::Parse("011"), NodeLabel::Parse("1"));
  EXPECT_EQ(CaughtCode([] { (void)NodeLabel::Parse("012"); }), ErrorCode::kInvalidNode);
  EXPECT_EQ(CaughtCode([] { (void)NodeLabel::Root().Parent(); }), ErrorCode::kInvalidNode);
}

TEST(PathTest, Examples) {
  const auto path = Path(NodeLabel::Parse("101"), 3);
  EXPECT_EQ(path, (std::vector<NodeLabel>{NodeLabel::Parse(""), NodeLabel::Parse("1"),
                                          NodeLabel::Parse("10"), NodeLabel::Parse("101")}));
  EXPECT_EQ(Path(NodeLabel::Parse("0"), 1),
            (std::vector<NodeLabel>{NodeLabel::Root(), NodeLabel::Parse("0")}));
  EXPECT_EQ(CaughtCode([] { (void)Path(NodeLabel::Parse("10"), 3); }), ErrorCode::kInvalidNode);
}

TEST(PathTest, EveryEntryIsAPrefixOfTheLeaf) {
  for (unsigned depth = 1; depth <= 6; ++depth) {
    for (std::uint64_t leaf = 0; leaf < (std::uint64_t{1} << depth); ++leaf) {
      const NodeLabel l(leaf, depth);
      const auto path = Path(l, depth);
      ASSERT_EQ(path.size(), depth + 1);
      for (unsigned i = 0; i < path.size(); ++i) {
        EXPECT_EQ(path[i].depth(), i);
        EXPECT_TRUE(path[i].IsPrefixOf(l));
      }
    }
  }
}

TEST(CtNodesTest, Examples) {
  EXPECT_EQ(CtNodes(3, TimePeriod{0}), Labels({"000", "001", "01", "1"}));
  EXPECT_EQ(CtNodes(3, TimePeriod{3}), Labels({"011", "1"}));
  EXPECT_EQ(CtNodes(3, TimePeriod{7}), Labels({"111"}));
  EXPECT_EQ(CaughtCode([] { (void)CtNodes(3, TimePeriod{8}); }), ErrorCode::kInvalidTime);
}

TEST(CtNodesTest, CoverageOracle) {
  for (unsigned ell = 1; ell <= 5; ++ell) {
    const std::uint64_t periods = std::uint64_t{1} << ell;
    for (std::uint64_t t = 0; t < periods; ++t) {
      const NodeSet nodes = CtNodes(ell, TimePeriod{t});
      std::set<std::uint64_t> future;
      for (std::uint64_t x = t; x < periods; ++x) future.insert(x);
      EXPECT_EQ(LeavesUnder(nodes, ell), future) << "ell=" << ell << " t=" << t;
      EXPECT_TRUE(PairwiseDisjoint(nodes));
      EXPECT_LE(nodes.size(), ell + 1);
      EXPECT_TRUE(nodes.contains(TimeLeaf(TimePeriod{t}, ell)));
    }
  }
}

// Wei's set read off its definition: every node whose parent lies on the
// path to v_T but which is not itself on that path, plus v_T.
NodeSet WeiByDefinition(unsigned ell, std::uint64_t t) {
  const NodeLabel leaf(t, ell);
  NodeSet out{leaf};
  for (const auto& v : AllNodes(ell)) {
    if (v.IsRoot()) continue;
    if (v.Parent().IsPrefixOf(leaf) && !v.IsPrefixOf(leaf)) out.insert(v);
  }
  return out;
}

TEST(CtNodesWeiTest, Examples) {
  EXPECT_EQ(CtNodesWei(3, TimePeriod{5}), Labels({"0", "11", "100", "101"}));
  EXPECT_EQ(CtNodesWei(3, TimePeriod{0}), CtNodes(3, TimePeriod{0}));
  EXPECT_EQ(CtNodesWei(1, TimePeriod{1}), Labels({"0", "1"}));
  EXPECT_EQ(CaughtCode([] { (void)CtNodesWei(2, TimePeriod{4}); }), ErrorCode::kInvalidTime);
}

TEST(CtNodesWeiTest, MatchesLiteralDefinition) {
  for (unsigned ell = 1; ell <= 5; ++ell) {
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << ell); ++t) {
      EXPECT_EQ(CtNodesWei(ell, TimePeriod{t}), WeiByDefinition(ell, t));
    }
  }
}

TEST(CtNodesWeiTest, FlawWitness) {
  for (unsigned ell = 1; ell <= 5; ++ell) {
    const std::uint64_t last = (std::uint64_t{1} << ell) - 1;
    bool witnessed = false;
    for (std::uint64_t t = 0; t <= last; ++t) {
      const auto covered = LeavesUnder(CtNodesWei(ell, TimePeriod{t}), ell);
      const bool past = !covered.empty() && *covered.begin() < t;
      witnessed |= past;
      if (t == last) {
        EXPECT_TRUE(past) << "ell=" << ell;
      }
    }
    EXPECT_TRUE(witnessed);
  }
}

TEST(FindPrefixAncestorTest, Examples) {
  const NodeSet c = Labels({"011", "1"});
  EXPECT_EQ(FindPrefixAncestor(c, NodeLabel::Parse("101")), NodeLabel::Parse("1"));
  EXPECT_EQ(FindPrefixAncestor(c, NodeLabel::Parse("011")), NodeLabel::Parse("011"));
  EXPECT_EQ(CaughtCode([] {
              (void)FindPrefixAncestor(CtNodes(3, TimePeriod{3}), NodeLabel::Parse("010"));
            }),
            ErrorCode::kNoAncestor);
}

TEST(FindPrefixAncestorTest, LemmaOne) {
  for (unsigned ell = 1; ell <= 5; ++ell) {
    const std::uint64_t periods = std::uint64_t{1} << ell;
    for (std::uint64_t t = 0; t < periods; ++t) {
      const NodeSet nodes = CtNodes(ell, TimePeriod{t});
      const NodeLabel own = TimeLeaf(TimePeriod{t}, ell);
      for (std::uint64_t later = t + 1; later < periods; ++later) {
        const NodeLabel anc = FindPrefixAncestor(nodes, TimeLeaf(TimePeriod{later}, ell));
        EXPECT_NE(anc, own) << ell << " " << t << " " << later;
      }
    }
  }
}

TEST(RevocationTreeTest, AssignLeafErrors) {
  RevocationTree tree(2);
  EXPECT_EQ(tree.AssignLeaf(Identity::Parse("11")), 0u);
  EXPECT_EQ(tree.LeafOf(Identity::Parse("11")), 0u);
  EXPECT_EQ(CaughtCode([&] { tree.AssignLeaf(Identity::Parse("11")); }),
            ErrorCode::kAlreadyAssigned);
  EXPECT_EQ(CaughtCode([&] { tree.AssignLeaf(Identity::Parse("1")); }),
            ErrorCode::kInvalidIdentity);
}

TEST(RevocationTreeTest, FullTreeRefusesFurtherAssignments) {
  // Identities are n bits wide, so once 2^n users hold leaves every further
  // request names an identity that already has one.
  RevocationTree tree(2);
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_EQ(tree.AssignLeaf(Identity(i, 2)), i);
  for (std::uint64_t i = 0; i < 4; ++i) {
    EXPECT_EQ(CaughtCode([&] { tree.AssignLeaf(Identity(i, 2)); }), ErrorCode::kAlreadyAssigned);
  }
  RevocationTree restored(2);
  EXPECT_EQ(CaughtCode([&] { restored.RestoreAssignment(Identity::Parse("01"), 4); }),
            ErrorCode::kInvalidParameter);
}

TEST(RevocationTreeTest, RandomPolicyUsesEveryLeafOnce) {
  Randomness rng(3, "leaves");
  RevocationTree tree(3, LeafPolicy::kRandom);
  std::set<std::uint64_t> used;
  for (std::uint64_t i = 0; i < 8; ++i) used.insert(tree.AssignLeaf(Identity(i, 3), &rng));
  EXPECT_EQ(used.size(), 8u);
  EXPECT_EQ(CaughtCode([] {
              RevocationTree t(2, LeafPolicy::kRandom);
              t.AssignLeaf(Identity::Parse("00"));
            }),
            ErrorCode::kInvalidParameter);
}

TEST(RevocationTreeTest, NodeSecretsSplitG2AndPersist) {
  Randomness rng(8, "secrets");
  const GroupElem g2 = GroupElem::Generator(Backend::kMock, Group::kG2).Pow(rng.SampleNonzero("g2"));
  RevocationTree tree(2);
  const NodeLabel x = NodeLabel::Parse("0");
  EXPECT_EQ(tree.FindSecret(x), nullptr);
  const NodeSecret first = tree.EnsureSecret(x, g2, rng);
  EXPECT_EQ(first.share0 * first.share1, g2);
  const NodeSecret again = tree.EnsureSecret(x, g2, rng);
  EXPECT_EQ(again.share0, first.share0);
  EXPECT_EQ(tree.secrets().size(), 1u);
  EXPECT_EQ(CaughtCode([&] { tree.EnsureSecret(NodeLabel::Parse("000"), g2, rng); }),
            ErrorCode::kInvalidNode);
  EXPECT_EQ(CaughtCode([&] {
              tree.RestoreSecret(NodeLabel::Parse("1"), NodeSecret{first.share0, first.share0}, g2);
            }),
            ErrorCode::kInvalidParameter);
}

TEST(RevocationListTest, KeepsEarliestTime) {
  RevocationList rl;
  const Identity id = Identity::Parse("01");
  rl.Add(id, TimePeriod{3});
  rl.Add(id, TimePeriod{5});
  EXPECT_FALSE(rl.IsRevokedAt(id, TimePeriod{2}));
  EXPECT_TRUE(rl.IsRevokedAt(id, TimePeriod{3}));
  rl.Add(id, TimePeriod{1});
  EXPECT_TRUE(rl.IsRevokedAt(id, TimePeriod{1}));
  EXPECT_EQ(rl.entries().size(), 1u);
}

TEST(KuNodesTest, Examples) {
  RevocationTree tree(2);
  for (std::uint64_t i = 0; i < 4; ++i) tree.AssignLeaf(Identity(i, 2));
  RevocationList rl;
  EXPECT_EQ(KuNodes(tree, rl, TimePeriod{0}), Labels({""}));
  rl.Add(Identity::Parse("00"), TimePeriod{0});
  EXPECT_EQ(KuNodes(tree, rl, TimePeriod{0}), Labels({"01", "1"}));
  for (std::uint64_t i = 1; i < 4; ++i) rl.Add(Identity(i, 2), TimePeriod{0});
  EXPECT_TRUE(KuNodes(tree, rl, TimePeriod{0}).empty());

  RevocationTree fresh(2);
  EXPECT_EQ(KuNodes(fresh, RevocationList(), TimePeriod{0}), Labels({""}));
}

// Fully assigned tree of depth n, identities equal to leaf indices.
RevocationTree FullTree(unsigned n) {
  RevocationTree tree(n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) tree.AssignLeaf(Identity(i, n));
  return tree;
}

void CheckKuOracle(const RevocationTree& tree, std::uint64_t revoked_mask,
                   const std::vector<TimePeriod>& revoke_times, TimePeriod t) {
  const unsigned n = tree.depth();
  RevocationList rl;
  std::set<std::uint64_t> expected;
  for (std::uint64_t i = 0; i < tree.capacity(); ++i) {
    if (revoked_mask >> i & 1) rl.Add(Identity(i, n), revoke_times[i]);
    if (!(revoked_mask >> i & 1) || revoke_times[i] > t) expected.insert(i);
  }
  const NodeSet nodes = KuNodes(tree, rl, t);
  ASSERT_EQ(LeavesUnder(nodes, n), expected) << "mask=" << revoked_mask << " t=" << t.value;
  ASSERT_TRUE(PairwiseDisjoint(nodes));
  ASSERT_EQ(nodes, MinimalCover(expected, n));
}

TEST(KuNodesTest, ExhaustiveOracleUpToDepthThree) {
  for (unsigned n = 1; n <= 3; ++n) {
    const RevocationTree tree = FullTree(n);
    const std::uint64_t leaves = tree.capacity();
    std::vector<TimePeriod> times(leaves, TimePeriod{0});
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << leaves); ++mask) {
      CheckKuOracle(tree, mask, times, TimePeriod{0});
    }
  }
}

TEST(KuNodesTest, RevocationTimesAreRespected) {
  const RevocationTree tree = FullTree(3);
  std::mt19937_64 gen(12);
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    std::vector<TimePeriod> times(8);
    for (auto& t : times) t = TimePeriod{gen() % 8};
    for (std::uint64_t t = 0; t < 8; t += 3) CheckKuOracle(tree, mask, times, TimePeriod{t});
  }
}

TEST(KuNodesTest, SampledOracleDepthFour) {
  const RevocationTree tree = FullTree(4);
  std::mt19937_64 gen(99);
  std::vector<TimePeriod> times(16, TimePeriod{0});
  for (int i = 0; i < 2000; ++i) CheckKuOracle(tree, gen() & 0xffff, times, TimePeriod{0});
  CheckKuOracle(tree, 0, times, TimePeriod{0});
  CheckKuOracle(tree, 0xffff, times, TimePeriod{0});
}

}  // namespace
}  // namespace rsibe

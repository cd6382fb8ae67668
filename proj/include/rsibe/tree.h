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

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rsibe/group.h"
#include "rsibe/randomness.h"

namespace rsibe {

// Trees are capped at this depth so labels fit in one machine word.
inline constexpr unsigned kMaxTreeDepth = 32;

// Fixed-length bit string, most significant bit first.
class BitString {
 public:
  BitString() = default;
  BitString(std::uint64_t value, unsigned length);

  static BitString Parse(std::string_view text);  // "0110"; "" is empty

  unsigned length() const { return length_; }
  std::uint64_t value() const { return value_; }
  // Bit at 0-based position `i` counted from the most significant end.
  bool Bit(unsigned i) const;
  std::string ToString() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  // Lexicographic, with a proper prefix ordered before its extensions.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

 protected:
  std::uint64_t value_ = 0;
  unsigned length_ = 0;
};

// Node of a complete binary tree addressed by its root-to-node path
// (0 = left, 1 = right). The empty label is the root.
class NodeLabel : public BitString {
 public:
  using BitString::BitString;
  NodeLabel(const BitString& b) : BitString(b) {}  // NOLINT

  static NodeLabel Root() { return NodeLabel(); }
  static NodeLabel Parse(std::string_view text) { return BitString::Parse(text); }

  unsigned depth() const { return length_; }
  bool IsRoot() const { return length_ == 0; }
  NodeLabel Parent() const;  // throws kInvalidNode for the root
  NodeLabel Child(bool right) const;
  bool IsPrefixOf(const NodeLabel& other) const;
  // Report form: the bit string, or "ε" for the root.
  std::string Display() const;
};

// n-bit identity string.
class Identity : public BitString {
 public:
  using BitString::BitString;
  Identity(const BitString& b) : BitString(b) {}  // NOLINT
  static Identity Parse(std::string_view text) { return BitString::Parse(text); }
};

struct TimePeriod {
  std::uint64_t value = 0;

  friend auto operator<=>(const TimePeriod&, const TimePeriod&) = default;
};

using NodeSet = std::set<NodeLabel>;

NodeLabel LeafLabel(std::uint64_t index, unsigned depth);
// Leaf v_T of the time tree: the depth-`ell` big-endian encoding of t.
NodeLabel TimeLeaf(TimePeriod t, unsigned ell);
void CheckTime(TimePeriod t, unsigned ell);

// Root-to-leaf chain, inclusive. `leaf` must sit at `tree_depth`.
std::vector<NodeLabel> Path(const NodeLabel& leaf, unsigned tree_depth);

// Nodes whose subtrees cover exactly the periods t, t+1, ..., 2^ell - 1:
// RightSibling(Path(v_t)) \ Path(Parent(v_t)) ∪ {v_t}.
NodeSet CtNodes(unsigned ell, TimePeriod t);

// Children of path nodes that are off the path, plus v_t. Left children of
// the path cover past periods, so this set does not give forward security.
NodeSet CtNodesWei(unsigned ell, TimePeriod t);

// The candidate that is a prefix of `target` (a node is its own prefix).
// Throws kNoAncestor when there is none.
NodeLabel FindPrefixAncestor(const NodeSet& candidates, const NodeLabel& target);

struct NodeSecret {
  GroupElem share0;  // g_{x,0}
  GroupElem share1;  // g_{x,1} = g2 / g_{x,0}
};

enum class LeafPolicy { kFirstFree, kRandom };

// Revocation tree BT together with the per-node master-secret splits.
class RevocationTree {
 public:
  explicit RevocationTree(unsigned depth, LeafPolicy policy = LeafPolicy::kFirstFree);

  unsigned depth() const { return depth_; }
  std::uint64_t capacity() const { return std::uint64_t{1} << depth_; }
  LeafPolicy policy() const { return policy_; }

  // kRandom draws from `rng`, which must then be non-null.
  std::uint64_t AssignLeaf(const Identity& id, Randomness* rng = nullptr);
  std::optional<std::uint64_t> LeafOf(const Identity& id) const;
  const std::map<Identity, std::uint64_t>& assignments() const { return assignments_; }

  const NodeSecret* FindSecret(const NodeLabel& node) const;
  // Returns the stored split for `node`, creating one with a fresh random
  // g_{x,0} on first use.
  const NodeSecret& EnsureSecret(const NodeLabel& node, const GroupElem& g2,
                                 Randomness& rng);
  const std::map<NodeLabel, NodeSecret>& secrets() const { return secrets_; }

  // Restore persisted state; validates leaf range and the split identity.
  void RestoreAssignment(const Identity& id, std::uint64_t leaf);
  void RestoreSecret(const NodeLabel& node, NodeSecret secret, const GroupElem& g2);

 private:
  unsigned depth_;
  LeafPolicy policy_;
  std::map<Identity, std::uint64_t> assignments_;
  std::set<std::uint64_t> used_leaves_;
  std::map<NodeLabel, NodeSecret> secrets_;
};

// (ID, T) entries: ID is revoked for every update time >= T.
class RevocationList {
 public:
  // A second revocation of the same identity keeps the earlier time.
  void Add(const Identity& id, TimePeriod from);
  bool IsRevokedAt(const Identity& id, TimePeriod t) const;
  bool empty() const { return entries_.empty(); }
  const std::map<Identity, TimePeriod>& entries() const { return entries_; }

 private:
  std::map<Identity, TimePeriod> entries_;
};

// Complete-subtree cover of every leaf not revoked at time t. Leaves that
// were never assigned are covered as well, so users who join later are
// already served by the root-side nodes.
NodeSet KuNodes(const RevocationTree& tree, const RevocationList& rl, TimePeriod t);

}  // namespace rsibe

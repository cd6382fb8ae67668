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

#include "rsibe/tree.h"

#include "rsibe/error.h"

namespace rsibe {

BitString::BitString(std::uint64_t value, unsigned length)
    : value_(value), length_(length) {
  if (length > kMaxTreeDepth) {
    Throw(ErrorCode::kInvalidNode, "bit string longer than " +
                                       std::to_string(kMaxTreeDepth) + " bits");
  }
  if (length < 64 && (value >> length) != 0) {
    Throw(ErrorCode::kInvalidNode, "value does not fit in " +
                                       std::to_string(length) + " bits");
  }
}

BitString BitString::Parse(std::string_view text) {
  if (text == "ε") return BitString();
  if (text.size() > kMaxTreeDepth) {
    Throw(ErrorCode::kInvalidNode, "bit string too long: " + std::string(text));
  }
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      Throw(ErrorCode::kInvalidNode, "not a bit string: '" + std::string(text) + "'");
    }
    v = (v << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return BitString(v, static_cast<unsigned>(text.size()));
}

bool BitString::Bit(unsigned i) const {
  return ((value_ >> (length_ - 1 - i)) & 1) != 0;
}

std::string BitString::ToString() const {
  std::string out(length_, '0');
  for (unsigned i = 0; i < length_; ++i) {
    if (Bit(i)) out[i] = '1';
  }
  return out;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  const unsigned common = std::min(a.length_, b.length_);
  for (unsigned i = 0; i < common; ++i) {
    if (a.Bit(i) != b.Bit(i)) return a.Bit(i) ? std::strong_ordering::greater
                                              : std::strong_ordering::less;
  }
  return a.length_ <=> b.length_;
}

NodeLabel NodeLabel::Parent() const {
  if (IsRoot()) Throw(ErrorCode::kInvalidNode, "the root has no parent");
  return NodeLabel(value_ >> 1, length_ - 1);
}

NodeLabel NodeLabel::Child(bool right) const {
  return NodeLabel((value_ << 1) | static_cast<std::uint64_t>(right), length_ + 1);
}

bool NodeLabel::IsPrefixOf(const NodeLabel& other) const {
  if (length_ > other.length_) return false;
  return (other.value_ >> (other.length_ - length_)) == value_;
}

std::string NodeLabel::Display() const { return IsRoot() ? "ε" : ToString(); }

NodeLabel LeafLabel(std::uint64_t index, unsigned depth) {
  if (depth > kMaxTreeDepth || index >= (std::uint64_t{1} << depth)) {
    Throw(ErrorCode::kInvalidNode, "leaf " + std::to_string(index) +
                                       " outside a tree of depth " +
                                       std::to_string(depth));
  }
  return NodeLabel(index, depth);
}

void CheckTime(TimePeriod t, unsigned ell) {
  if (ell > kMaxTreeDepth || t.value >= (std::uint64_t{1} << ell)) {
    Throw(ErrorCode::kInvalidTime, "time " + std::to_string(t.value) +
                                       " outside [0, 2^" + std::to_string(ell) + ")");
  }
}

NodeLabel TimeLeaf(TimePeriod t, unsigned ell) {
  CheckTime(t, ell);
  return NodeLabel(t.value, ell);
}

std::vector<NodeLabel> Path(const NodeLabel& leaf, unsigned tree_depth) {
  if (leaf.depth() != tree_depth) {
    Throw(ErrorCode::kInvalidNode, "'" + leaf.Display() + "' is not a leaf of a depth-" +
                                       std::to_string(tree_depth) + " tree");
  }
  std::vector<NodeLabel> out;
  out.reserve(tree_depth + 1);
  for (unsigned d = 0; d <= tree_depth; ++d) {
    out.emplace_back(leaf.value() >> (tree_depth - d), d);
  }
  return out;
}

NodeSet CtNodes(unsigned ell, TimePeriod t) {
  const NodeLabel leaf = TimeLeaf(t, ell);
  const auto path = Path(leaf, ell);

  NodeSet right_siblings;
  for (const auto& v : path) {
    if (!v.IsRoot()) right_siblings.insert(v.Parent().Child(true));
  }
  NodeSet out;
  if (leaf.IsRoot()) {
    out.insert(leaf);
    return out;
  }
  const auto parent_path = Path(leaf.Parent(), ell - 1);
  const NodeSet excluded(parent_path.begin(), parent_path.end());
  for (const auto& v : right_siblings) {
    if (!excluded.contains(v)) out.insert(v);
  }
  out.insert(leaf);
  return out;
}

NodeSet CtNodesWei(unsigned ell, TimePeriod t) {
  const NodeLabel leaf = TimeLeaf(t, ell);
  const auto path = Path(leaf, ell);
  const NodeSet on_path(path.begin(), path.end());

  NodeSet out;
  for (const auto& x : path) {
    if (x.depth() == ell) continue;
    for (bool right : {false, true}) {
      NodeLabel child = x.Child(right);
      if (!on_path.contains(child)) out.insert(child);
    }
  }
  out.insert(leaf);
  return out;
}

NodeLabel FindPrefixAncestor(const NodeSet& candidates, const NodeLabel& target) {
  for (const auto& c : candidates) {
    if (c.IsPrefixOf(target)) return c;
  }
  Throw(ErrorCode::kNoAncestor, "no candidate is a prefix of '" + target.Display() + "'");
}

RevocationTree::RevocationTree(unsigned depth, LeafPolicy policy)
    : depth_(depth), policy_(policy) {
  if (depth > kMaxTreeDepth) {
    Throw(ErrorCode::kInvalidParameter, "revocation tree too deep");
  }
}

std::uint64_t RevocationTree::AssignLeaf(const Identity& id, Randomness* rng) {
  if (id.length() != depth_) {
    Throw(ErrorCode::kInvalidIdentity, "identity '" + id.ToString() + "' is not " +
                                           std::to_string(depth_) + " bits long");
  }
  if (assignments_.contains(id)) {
    Throw(ErrorCode::kAlreadyAssigned, "identity '" + id.ToString() +
                                           "' already holds a leaf");
  }
  if (used_leaves_.size() >= capacity()) {
    Throw(ErrorCode::kCapacityExceeded, "all " + std::to_string(capacity()) +
                                            " leaves are assigned");
  }
  std::uint64_t leaf = 0;
  if (policy_ == LeafPolicy::kFirstFree) {
    while (used_leaves_.contains(leaf)) ++leaf;
  } else {
    if (rng == nullptr) {
      Throw(ErrorCode::kInvalidParameter, "random leaf policy needs a randomness source");
    }
    // Pick uniformly among the free leaves.
    std::uint64_t k = rng->NextWord() % (capacity() - used_leaves_.size());
    for (leaf = 0;; ++leaf) {
      if (used_leaves_.contains(leaf)) continue;
      if (k-- == 0) break;
    }
  }
  assignments_.emplace(id, leaf);
  used_leaves_.insert(leaf);
  return leaf;
}

std::optional<std::uint64_t> RevocationTree::LeafOf(const Identity& id) const {
  auto it = assignments_.find(id);
  if (it == assignments_.end()) return std::nullopt;
  return it->second;
}

const NodeSecret* RevocationTree::FindSecret(const NodeLabel& node) const {
  auto it = secrets_.find(node);
  return it == secrets_.end() ? nullptr : &it->second;
}

const NodeSecret& RevocationTree::EnsureSecret(const NodeLabel& node,
                                               const GroupElem& g2, Randomness& rng) {
  if (node.depth() > depth_) {
    Throw(ErrorCode::kInvalidNode, "node '" + node.Display() + "' is below the leaves");
  }
  if (auto it = secrets_.find(node); it != secrets_.end()) return it->second;
  const Scalar x = rng.SampleNonzero("node_secret[" + node.ToString() + "]");
  GroupElem share0 = GroupElem::Generator(g2.backend(), Group::kG2).Pow(x);
  GroupElem share1 = g2 / share0;
  return secrets_.emplace(node, NodeSecret{share0, share1}).first->second;
}

void RevocationTree::RestoreAssignment(const Identity& id, std::uint64_t leaf) {
  if (id.length() != depth_ || leaf >= capacity()) {
    Throw(ErrorCode::kInvalidParameter, "stored assignment out of range");
  }
  if (assignments_.contains(id) || used_leaves_.contains(leaf)) {
    Throw(ErrorCode::kAlreadyAssigned, "stored assignment reuses an identity or leaf");
  }
  assignments_.emplace(id, leaf);
  used_leaves_.insert(leaf);
}

void RevocationTree::RestoreSecret(const NodeLabel& node, NodeSecret secret,
                                   const GroupElem& g2) {
  if (node.depth() > depth_) {
    Throw(ErrorCode::kInvalidNode, "node '" + node.Display() + "' is below the leaves");
  }
  if (!(secret.share0 * secret.share1 == g2)) {
    Throw(ErrorCode::kInvalidParameter, "node secret for '" + node.Display() +
                                            "' does not recombine to g2");
  }
  secrets_.insert_or_assign(node, std::move(secret));
}

void RevocationList::Add(const Identity& id, TimePeriod from) {
  auto [it, inserted] = entries_.emplace(id, from);
  if (!inserted && from < it->second) it->second = from;
}

bool RevocationList::IsRevokedAt(const Identity& id, TimePeriod t) const {
  auto it = entries_.find(id);
  return it != entries_.end() && it->second <= t;
}

NodeSet KuNodes(const RevocationTree& tree, const RevocationList& rl, TimePeriod t) {
  NodeSet marked;
  for (const auto& [id, from] : rl.entries()) {
    if (t < from) continue;
    auto leaf = tree.LeafOf(id);
    if (!leaf) continue;
    for (const auto& x : Path(LeafLabel(*leaf, tree.depth()), tree.depth())) {
      marked.insert(x);
    }
  }
  if (marked.empty()) return {NodeLabel::Root()};

  NodeSet out;
  for (const auto& x : marked) {
    if (x.depth() == tree.depth()) continue;
    for (bool right : {false, true}) {
      NodeLabel child = x.Child(right);
      if (!marked.contains(child)) out.insert(child);
    }
  }
  return out;
}

}  // namespace rsibe

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

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "rsibe/group.h"
#include "rsibe/randomness.h"
#include "rsibe/tree.h"

namespace rsibe {

enum class SchemeVariant {
  // Independent s_v per ciphertext node, s only at the leaf v_T.
  kWeiOriginal,
  // Every node uses the message exponent s.
  kNaiveSharedS,
  // Each node is a complete sub-ciphertext under its own exponent.
  kCorrectedParallel,
};

enum class DelegationMode {
  // C_{v',0} = C_{v,0} * prod_j C_{v,j}, exactly as the scheme is written.
  kVerbatim,
  // C_{v',0} = C_{v,0} * prod_j C_{v,j}^{b_{v'}[j]}.
  kBitCorrected,
};

const char* VariantName(SchemeVariant v);
SchemeVariant ParseVariant(std::string_view name);
const char* ModeName(DelegationMode m);
DelegationMode ParseMode(std::string_view name);

// A public base published in both source groups with one exponent.
struct DualElem {
  GroupElem in_g1;
  GroupElem in_g2;

  const GroupElem& on(Group side) const { return side == Group::kG1 ? in_g1 : in_g2; }
};

struct PublicParams {
  BackendConfig backend;
  unsigned n = 0;    // identity bits, N_max = 2^n
  unsigned ell = 0;  // time bits, T_max = 2^ell
  DualElem g;
  GroupElem g1;  // g^alpha in G1
  GroupElem g2;  // in G2
  std::vector<DualElem> u;  // u_0..u_n
  std::vector<DualElem> h;  // h_0..h_ell
  GroupElem egg;            // e(g1, g2), cached

  Backend kind() const { return backend.kind; }
};

struct MasterKey {
  Scalar alpha;
  GroupElem msk;  // g2^alpha
};

// (K_{x,0}, K_{x,1}) for private keys, (U_0, U_1) for key updates.
struct KeyPair {
  GroupElem first;
  GroupElem second;
};

struct PrivateKey {
  Identity id;
  std::uint64_t leaf = 0;
  std::map<NodeLabel, KeyPair> entries;
};

struct KeyUpdate {
  TimePeriod t;
  std::map<NodeLabel, KeyPair> entries;
};

struct DecryptionKey {
  Identity id;
  TimePeriod t;
  GroupElem d1;
  GroupElem d2;
  GroupElem d3;
};

// (C_0, C_1, C_2) = (M e(g1,g2)^x, g^{-x}, F_u(ID)^x).
struct CiphertextBase {
  GroupElem c0;
  GroupElem c1;
  GroupElem c2;
};

struct NodeComponent {
  NodeLabel label;
  GroupElem c0;               // F(b_v)^{s_v}
  std::vector<GroupElem> tail;  // h_j^{s_v}, j = |b_v|+1 .. ell
  std::optional<CiphertextBase> own;  // corrected variant only

  const GroupElem& TailAt(unsigned j) const { return tail.at(j - label.depth() - 1); }
};

struct Ciphertext {
  SchemeVariant variant = SchemeVariant::kWeiOriginal;
  Identity id;
  TimePeriod t;
  std::optional<CiphertextBase> base;
  std::map<NodeLabel, NodeComponent> nodes;
};

// F_u(ID) = u_0 prod u_i^{ID[i]}.
GroupElem HashIdentity(const PublicParams& pp, const Identity& id, Group side);
// F_h(T) = h_0 prod h_j^{T[j]}.
GroupElem HashTime(const PublicParams& pp, TimePeriod t, Group side);
// h_0 prod_{j <= |b|} h_j^{b[j]}; equals HashTime at the leaf of t.
GroupElem HashLabel(const PublicParams& pp, const NodeLabel& label, Group side);

struct SetupResult {
  MasterKey mk;
  PublicParams pp;
  RevocationTree st;
  RevocationList rl;
};

// max_users and max_periods must be powers of two.
SetupResult Setup(int security_bits, std::uint64_t max_users,
                  std::uint64_t max_periods, const BackendConfig& backend,
                  Randomness& rng, LeafPolicy policy = LeafPolicy::kFirstFree);

PrivateKey GenKey(const Identity& id, const MasterKey& mk, RevocationTree& st,
                  const PublicParams& pp, Randomness& rng);

KeyUpdate UpdateKey(TimePeriod t, const RevocationList& rl, const MasterKey& mk,
                    RevocationTree& st, const PublicParams& pp, Randomness& rng);

// Throws kRevoked when the key and the update share no node.
DecryptionKey DeriveDk(const PrivateKey& sk, const KeyUpdate& ku,
                       const PublicParams& pp, Randomness& rng);

Ciphertext Encrypt(const Identity& id, TimePeriod t, const GroupElem& m,
                   const PublicParams& pp, SchemeVariant variant, Randomness& rng);

// Throws kInvalidUpdate for t_new < ct.t.
Ciphertext UpdateCt(const Ciphertext& ct, TimePeriod t_new, const PublicParams& pp,
                    Randomness& rng,
                    DelegationMode mode = DelegationMode::kBitCorrected);

// Moves the ciphertext to the key's period and evaluates
// C_0 e(C_1, D_1) e(C_2, D_2) e(C_{v,0}, D_3) at the leaf v of dk.t. The
// result is whatever GT element comes out; no validity check is possible.
// Throws kRejected when dk.t < ct.t.
GroupElem Decrypt(const Ciphertext& ct, const DecryptionKey& dk,
                  const PublicParams& pp, Randomness& rng,
                  DelegationMode mode = DelegationMode::kBitCorrected);

// The pairing product used by Decrypt, on an explicit base and leaf element.
GroupElem Unmask(const CiphertextBase& base, const GroupElem& leaf_c0,
                 const DecryptionKey& dk);

// Throws kUnknownIdentity for identities without a leaf.
void Revoke(const Identity& id, TimePeriod t, RevocationList& rl,
            const RevocationTree& st);

// Deterministic GT message e(g,g)^k with k drawn from `seed`.
GroupElem MessageFromSeed(Backend backend, std::uint64_t seed);

}  // namespace rsibe

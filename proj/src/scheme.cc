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

#include "rsibe/scheme.h"

#include <bit>
#include <string>

#include "rsibe/error.h"

namespace rsibe {

namespace {

std::string Site(std::string_view prefix, const NodeLabel& node) {
  return std::string(prefix) + "[" + node.ToString() + "]";
}

void CheckIdentity(const PublicParams& pp, const Identity& id) {
  if (id.length() != pp.n) {
    Throw(ErrorCode::kInvalidIdentity, "identity '" + id.ToString() + "' is not " +
                                           std::to_string(pp.n) + " bits long");
  }
}

unsigned Log2Exact(std::uint64_t v, const char* what) {
  if (v < 2 || !std::has_single_bit(v)) {
    Throw(ErrorCode::kInvalidParameter,
          std::string(what) + " must be a power of two >= 2, got " + std::to_string(v));
  }
  const auto bits = static_cast<unsigned>(std::countr_zero(v));
  if (bits > kMaxTreeDepth) {
    Throw(ErrorCode::kInvalidParameter, std::string(what) + " exceeds 2^" +
                                            std::to_string(kMaxTreeDepth));
  }
  return bits;
}

DualElem RandomDual(Backend backend, Randomness& rng, const std::string& label) {
  const Scalar x = rng.SampleNonzero(label);
  return {GroupElem::Generator(backend, Group::kG1).Pow(x),
          GroupElem::Generator(backend, Group::kG2).Pow(x)};
}

CiphertextBase MaskMessage(const PublicParams& pp, const Identity& id,
                           const GroupElem& m, const Scalar& x) {
  return {m * pp.egg.Pow(x), pp.g.in_g1.Pow(-x),
          HashIdentity(pp, id, Group::kG1).Pow(x)};
}

CiphertextBase RerandomizeBase(const PublicParams& pp, const Identity& id,
                               const CiphertextBase& base, const Scalar& x) {
  return {base.c0 * pp.egg.Pow(x), base.c1 * pp.g.in_g1.Pow(-x),
          base.c2 * HashIdentity(pp, id, Group::kG1).Pow(x)};
}

NodeComponent MakeNode(const PublicParams& pp, const NodeLabel& label,
                       const Scalar& x) {
  NodeComponent out{label, HashLabel(pp, label, Group::kG1).Pow(x), {}, std::nullopt};
  for (unsigned j = label.depth() + 1; j <= pp.ell; ++j) {
    out.tail.push_back(pp.h[j].in_g1.Pow(x));
  }
  return out;
}

// Moves the component at `from` down to its descendant `to` and adds a
// fresh exponent x.
NodeComponent Delegate(const PublicParams& pp, const NodeComponent& from,
                       const NodeLabel& to, const Scalar& x, DelegationMode mode) {
  GroupElem c0 = from.c0;
  for (unsigned j = from.label.depth() + 1; j <= to.depth(); ++j) {
    if (mode == DelegationMode::kVerbatim || to.Bit(j - 1)) c0 *= from.TailAt(j);
  }
  NodeComponent out{to, c0 * HashLabel(pp, to, Group::kG1).Pow(x), {}, std::nullopt};
  for (unsigned j = to.depth() + 1; j <= pp.ell; ++j) {
    out.tail.push_back(from.TailAt(j) * pp.h[j].in_g1.Pow(x));
  }
  return out;
}

}  // namespace

const char* VariantName(SchemeVariant v) {
  switch (v) {
    case SchemeVariant::kWeiOriginal: return "wei";
    case SchemeVariant::kNaiveSharedS: return "naive";
    case SchemeVariant::kCorrectedParallel: return "corrected";
  }
  return "?";
}

SchemeVariant ParseVariant(std::string_view name) {
  if (name == "wei") return SchemeVariant::kWeiOriginal;
  if (name == "naive") return SchemeVariant::kNaiveSharedS;
  if (name == "corrected") return SchemeVariant::kCorrectedParallel;
  Throw(ErrorCode::kInvalidParameter, "unknown variant '" + std::string(name) + "'");
}

const char* ModeName(DelegationMode m) {
  return m == DelegationMode::kVerbatim ? "verbatim" : "bit-corrected";
}

DelegationMode ParseMode(std::string_view name) {
  if (name == "verbatim") return DelegationMode::kVerbatim;
  if (name == "bit-corrected") return DelegationMode::kBitCorrected;
  Throw(ErrorCode::kInvalidParameter, "unknown delegation mode '" + std::string(name) + "'");
}

GroupElem HashIdentity(const PublicParams& pp, const Identity& id, Group side) {
  CheckIdentity(pp, id);
  GroupElem out = pp.u[0].on(side);
  for (unsigned i = 1; i <= pp.n; ++i) {
    if (id.Bit(i - 1)) out *= pp.u[i].on(side);
  }
  return out;
}

GroupElem HashLabel(const PublicParams& pp, const NodeLabel& label, Group side) {
  if (label.depth() > pp.ell) {
    Throw(ErrorCode::kInvalidNode, "label '" + label.Display() + "' deeper than the time tree");
  }
  GroupElem out = pp.h[0].on(side);
  for (unsigned j = 1; j <= label.depth(); ++j) {
    if (label.Bit(j - 1)) out *= pp.h[j].on(side);
  }
  return out;
}

GroupElem HashTime(const PublicParams& pp, TimePeriod t, Group side) {
  return HashLabel(pp, TimeLeaf(t, pp.ell), side);
}

SetupResult Setup(int security_bits, std::uint64_t max_users,
                  std::uint64_t max_periods, const BackendConfig& backend,
                  Randomness& rng, LeafPolicy policy) {
  // BLS12-381 offers about 128 bits; the mock shares its scalar field.
  if (security_bits <= 0 || security_bits > 128) {
    Throw(ErrorCode::kInvalidParameter, "security parameter must be in (0, 128], got " +
                                            std::to_string(security_bits));
  }
  const unsigned n = Log2Exact(max_users, "max_users");
  const unsigned ell = Log2Exact(max_periods, "max_periods");
  const Backend kind = backend.kind;

  PublicParams pp;
  pp.backend = backend;
  pp.backend.security_bits = security_bits;
  pp.n = n;
  pp.ell = ell;

  const Scalar alpha = rng.SampleNonzero("setup.alpha");
  pp.g = RandomDual(kind, rng, "setup.g");
  pp.g2 = GroupElem::Generator(kind, Group::kG2).Pow(rng.SampleNonzero("setup.g2"));
  pp.g1 = pp.g.in_g1.Pow(alpha);
  for (unsigned i = 0; i <= n; ++i) {
    pp.u.push_back(RandomDual(kind, rng, "setup.u[" + std::to_string(i) + "]"));
  }
  for (unsigned j = 0; j <= ell; ++j) {
    pp.h.push_back(RandomDual(kind, rng, "setup.h[" + std::to_string(j) + "]"));
  }
  pp.egg = Pair(pp.g1, pp.g2);

  MasterKey mk{alpha, pp.g2.Pow(alpha)};
  return {std::move(mk), std::move(pp), RevocationTree(n, policy), RevocationList()};
}

PrivateKey GenKey(const Identity& id, const MasterKey& mk, RevocationTree& st,
                  const PublicParams& pp, Randomness& rng) {
  CheckIdentity(pp, id);
  PrivateKey sk;
  sk.id = id;
  sk.leaf = st.AssignLeaf(id, &rng);
  const GroupElem fu = HashIdentity(pp, id, Group::kG2);
  for (const auto& x : Path(LeafLabel(sk.leaf, pp.n), pp.n)) {
    const NodeSecret& secret = st.EnsureSecret(x, pp.g2, rng);
    const Scalar r = rng.SampleNonzero(Site("gen_key.r_x0", x));
    sk.entries.emplace(x, KeyPair{secret.share0.Pow(mk.alpha) * fu.Pow(r),
                                  pp.g.in_g2.Pow(r)});
  }
  return sk;
}

KeyUpdate UpdateKey(TimePeriod t, const RevocationList& rl, const MasterKey& mk,
                    RevocationTree& st, const PublicParams& pp, Randomness& rng) {
  CheckTime(t, pp.ell);
  KeyUpdate ku;
  ku.t = t;
  const GroupElem fh = HashTime(pp, t, Group::kG2);
  for (const auto& x : KuNodes(st, rl, t)) {
    const NodeSecret& secret = st.EnsureSecret(x, pp.g2, rng);
    const Scalar r = rng.SampleNonzero(Site("update_key.r_x1", x));
    ku.entries.emplace(x, KeyPair{secret.share1.Pow(mk.alpha) * fh.Pow(r),
                                  pp.g.in_g2.Pow(r)});
  }
  return ku;
}

DecryptionKey DeriveDk(const PrivateKey& sk, const KeyUpdate& ku,
                       const PublicParams& pp, Randomness& rng) {
  for (const auto& [x, key] : sk.entries) {
    auto it = ku.entries.find(x);
    if (it == ku.entries.end()) continue;
    const KeyPair& upd = it->second;
    const Scalar r0 = rng.SampleNonzero("derive_dk.r0");
    const Scalar r1 = rng.SampleNonzero("derive_dk.r1");
    return {sk.id, ku.t,
            key.first * upd.first * HashIdentity(pp, sk.id, Group::kG2).Pow(r0) *
                HashTime(pp, ku.t, Group::kG2).Pow(r1),
            key.second * pp.g.in_g2.Pow(r0), upd.second * pp.g.in_g2.Pow(r1)};
  }
  Throw(ErrorCode::kRevoked, "identity '" + sk.id.ToString() + "' is revoked at time " +
                                 std::to_string(ku.t.value));
}

Ciphertext Encrypt(const Identity& id, TimePeriod t, const GroupElem& m,
                   const PublicParams& pp, SchemeVariant variant, Randomness& rng) {
  CheckIdentity(pp, id);
  const NodeLabel leaf = TimeLeaf(t, pp.ell);
  if (m.group() != Group::kGT) Throw(ErrorCode::kGroupMismatch, "message must be in GT");
  if (m.backend() != pp.kind()) Throw(ErrorCode::kBackendMismatch, "message backend differs");

  Ciphertext ct;
  ct.variant = variant;
  ct.id = id;
  ct.t = t;
  Scalar s;
  if (variant != SchemeVariant::kCorrectedParallel) {
    s = rng.SampleNonzero("encrypt.s");
    ct.base = MaskMessage(pp, id, m, s);
  }
  for (const auto& v : CtNodes(pp.ell, t)) {
    Scalar sv = s;
    if (variant == SchemeVariant::kCorrectedParallel ||
        (variant == SchemeVariant::kWeiOriginal && v != leaf)) {
      sv = rng.SampleNonzero(Site("encrypt.s_v", v));
    }
    NodeComponent comp = MakeNode(pp, v, sv);
    if (variant == SchemeVariant::kCorrectedParallel) comp.own = MaskMessage(pp, id, m, sv);
    ct.nodes.emplace(v, std::move(comp));
  }
  return ct;
}

Ciphertext UpdateCt(const Ciphertext& ct, TimePeriod t_new, const PublicParams& pp,
                    Randomness& rng, DelegationMode mode) {
  const NodeLabel leaf = TimeLeaf(t_new, pp.ell);
  if (t_new < ct.t) {
    Throw(ErrorCode::kInvalidUpdate, "cannot move a ciphertext from time " +
                                         std::to_string(ct.t.value) + " back to " +
                                         std::to_string(t_new.value));
  }
  const bool has_base = ct.variant != SchemeVariant::kCorrectedParallel;
  if (has_base != ct.base.has_value()) {
    Throw(ErrorCode::kVariantMismatch, "ciphertext shape does not match its variant");
  }

  Ciphertext out;
  out.variant = ct.variant;
  out.id = ct.id;
  out.t = t_new;
  Scalar s_new;
  if (has_base) {
    s_new = rng.SampleNonzero("update_ct.s'");
    out.base = RerandomizeBase(pp, ct.id, *ct.base, s_new);
  }

  NodeSet available;
  for (const auto& [label, comp] : ct.nodes) available.insert(label);
  for (const auto& target : CtNodes(pp.ell, t_new)) {
    const NodeComponent& src = ct.nodes.at(FindPrefixAncestor(available, target));
    Scalar x = s_new;
    if (ct.variant == SchemeVariant::kCorrectedParallel ||
        (ct.variant == SchemeVariant::kWeiOriginal && target != leaf)) {
      x = rng.SampleNonzero(Site("update_ct.s_v", target));
    }
    NodeComponent comp = Delegate(pp, src, target, x, mode);
    if (ct.variant == SchemeVariant::kCorrectedParallel) {
      if (!src.own) Throw(ErrorCode::kVariantMismatch, "node lacks its sub-ciphertext");
      comp.own = RerandomizeBase(pp, ct.id, *src.own, x);
    }
    out.nodes.emplace(target, std::move(comp));
  }
  return out;
}

GroupElem Unmask(const CiphertextBase& base, const GroupElem& leaf_c0,
                 const DecryptionKey& dk) {
  return base.c0 * Pair(base.c1, dk.d1) * Pair(base.c2, dk.d2) * Pair(leaf_c0, dk.d3);
}

GroupElem Decrypt(const Ciphertext& ct, const DecryptionKey& dk,
                  const PublicParams& pp, Randomness& rng, DelegationMode mode) {
  if (!(dk.id == ct.id)) {
    Throw(ErrorCode::kIdentityMismatch, "key for '" + dk.id.ToString() +
                                            "' cannot open a ciphertext for '" +
                                            ct.id.ToString() + "'");
  }
  if (dk.t < ct.t) {
    Throw(ErrorCode::kRejected, "key predates ciphertext (key time " +
                                    std::to_string(dk.t.value) + " < ciphertext time " +
                                    std::to_string(ct.t.value) + ")");
  }
  const Ciphertext moved = UpdateCt(ct, dk.t, pp, rng, mode);
  const NodeComponent& leaf = moved.nodes.at(TimeLeaf(dk.t, pp.ell));
  if (moved.variant == SchemeVariant::kCorrectedParallel) {
    return Unmask(*leaf.own, leaf.c0, dk);
  }
  return Unmask(*moved.base, leaf.c0, dk);
}

void Revoke(const Identity& id, TimePeriod t, RevocationList& rl,
            const RevocationTree& st) {
  if (!st.LeafOf(id)) {
    Throw(ErrorCode::kUnknownIdentity, "identity '" + id.ToString() + "' was never issued a key");
  }
  rl.Add(id, t);
}

GroupElem MessageFromSeed(Backend backend, std::uint64_t seed) {
  Randomness rng(seed, "message");
  return GroupElem::Generator(backend, Group::kGT).Pow(rng.SampleNonzero("message"));
}

}  // namespace rsibe

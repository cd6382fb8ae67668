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

#include "rsibe/codec.h"

#include "rsibe/error.h"

namespace rsibe {

namespace {

Json Header(std::string_view type, Backend backend) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = type;
  j["backend"] = BackendName(backend);
  return j;
}

template <typename T>
T Field(const Json& j, std::string_view key) {
  auto it = j.find(key);
  if (it == j.end()) {
    Throw(ErrorCode::kDecodeError, "missing field '" + std::string(key) + "'");
  }
  try {
    return it->template get<T>();
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kDecodeError, "field '" + std::string(key) + "': " + e.what());
  }
}

const Json& Child(const Json& j, std::string_view key) {
  auto it = j.find(key);
  if (it == j.end()) {
    Throw(ErrorCode::kDecodeError, "missing field '" + std::string(key) + "'");
  }
  return *it;
}

void CheckHeader(const Json& j, std::string_view type, Backend expected) {
  if (!j.is_object()) Throw(ErrorCode::kDecodeError, "artifact is not a JSON object");
  if (Field<int>(j, "schema") != kSchemaVersion) {
    Throw(ErrorCode::kDecodeError, "unsupported schema version");
  }
  const auto actual = Field<std::string>(j, "type");
  if (actual != type) {
    Throw(ErrorCode::kDecodeError, "expected a '" + std::string(type) +
                                       "' artifact, found '" + actual + "'");
  }
  if (ParseBackend(Field<std::string>(j, "backend")) != expected) {
    Throw(ErrorCode::kBackendMismatch, std::string(type) + " was produced by the " +
                                           Field<std::string>(j, "backend") +
                                           " backend, parameters use " +
                                           BackendName(expected));
  }
}

Json DualToJson(const DualElem& d) {
  return Json{{"g1", ElemHex(d.in_g1)}, {"g2", ElemHex(d.in_g2)}};
}

DualElem DualFromJson(const Json& j, Backend b) {
  DualElem d{ElemFromHex(Child(j, "g1"), b, Group::kG1),
             ElemFromHex(Child(j, "g2"), b, Group::kG2)};
  // Both copies must carry the same exponent: e(x1, P2) = e(P1, x2).
  if (!(Pair(d.in_g1, GroupElem::Generator(b, Group::kG2)) ==
        Pair(GroupElem::Generator(b, Group::kG1), d.in_g2))) {
    Throw(ErrorCode::kDecodeError, "dual-group base copies disagree");
  }
  if (d.in_g1.IsIdentity()) Throw(ErrorCode::kDecodeError, "identity public base");
  return d;
}

Json PairMapToJson(const std::map<NodeLabel, KeyPair>& entries) {
  Json out = Json::array();
  for (const auto& [x, kp] : entries) {
    out.push_back(Json{{"node", x.ToString()},
                       {"k0", ElemHex(kp.first)},
                       {"k1", ElemHex(kp.second)}});
  }
  return out;
}

std::map<NodeLabel, KeyPair> PairMapFromJson(const Json& j, Backend b) {
  if (!j.is_array()) Throw(ErrorCode::kDecodeError, "entries must be an array");
  std::map<NodeLabel, KeyPair> out;
  for (const auto& e : j) {
    NodeLabel x = NodeLabel::Parse(Field<std::string>(e, "node"));
    KeyPair kp{ElemFromHex(Child(e, "k0"), b, Group::kG2),
               ElemFromHex(Child(e, "k1"), b, Group::kG2)};
    if (!out.emplace(x, std::move(kp)).second) {
      Throw(ErrorCode::kDecodeError, "duplicate node '" + x.Display() + "'");
    }
  }
  return out;
}

Json BaseToJson(const CiphertextBase& b) {
  return Json{{"c0", ElemHex(b.c0)}, {"c1", ElemHex(b.c1)}, {"c2", ElemHex(b.c2)}};
}

CiphertextBase BaseFromJson(const Json& j, Backend b) {
  return {ElemFromHex(Child(j, "c0"), b, Group::kGT),
          ElemFromHex(Child(j, "c1"), b, Group::kG1),
          ElemFromHex(Child(j, "c2"), b, Group::kG1)};
}

std::string CoefficientText(const Scalar& c) {
  if (auto small = c.ToSmallInt()) return std::to_string(*small);
  return "0x" + c.ToHex();
}

}  // namespace

std::string ToHex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) Throw(ErrorCode::kDecodeError, "odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    Throw(ErrorCode::kDecodeError, std::string("bad hex digit '") + c + "'");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

std::string ElemHex(const GroupElem& e) { return ToHex(Serialize(e)); }

GroupElem ElemFromHex(const Json& j, Backend backend, Group group) {
  if (!j.is_string()) Throw(ErrorCode::kDecodeError, "group element must be a hex string");
  return Deserialize(FromHex(j.get<std::string>()), backend, group);
}

std::string MessageHandle(const GroupElem& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : Serialize(m)) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  std::array<std::uint8_t, 8> be;
  for (int i = 0; i < 8; ++i) be[i] = static_cast<std::uint8_t>(h >> (56 - 8 * i));
  return ToHex(be);
}

Json ToJson(const PublicParams& pp) {
  Json j = Header("public_params", pp.kind());
  j["security_bits"] = pp.backend.security_bits;
  j["n"] = pp.n;
  j["ell"] = pp.ell;
  j["g"] = DualToJson(pp.g);
  j["g1"] = ElemHex(pp.g1);
  j["g2"] = ElemHex(pp.g2);
  j["u"] = Json::array();
  for (const auto& x : pp.u) j["u"].push_back(DualToJson(x));
  j["h"] = Json::array();
  for (const auto& x : pp.h) j["h"].push_back(DualToJson(x));
  return j;
}

PublicParams PublicParamsFromJson(const Json& j) {
  const Backend b = ParseBackend(Field<std::string>(j, "backend"));
  CheckHeader(j, "public_params", b);
  PublicParams pp;
  pp.backend = BackendConfig{b, Field<int>(j, "security_bits"), false};
  pp.n = Field<unsigned>(j, "n");
  pp.ell = Field<unsigned>(j, "ell");
  if (pp.n == 0 || pp.ell == 0 || pp.n > kMaxTreeDepth || pp.ell > kMaxTreeDepth) {
    Throw(ErrorCode::kDecodeError, "tree sizes out of range");
  }
  pp.g = DualFromJson(Child(j, "g"), b);
  pp.g1 = ElemFromHex(Child(j, "g1"), b, Group::kG1);
  pp.g2 = ElemFromHex(Child(j, "g2"), b, Group::kG2);
  if (pp.g1.IsIdentity() || pp.g2.IsIdentity()) {
    Throw(ErrorCode::kDecodeError, "identity public base");
  }
  for (const auto& x : Child(j, "u")) pp.u.push_back(DualFromJson(x, b));
  for (const auto& x : Child(j, "h")) pp.h.push_back(DualFromJson(x, b));
  if (pp.u.size() != pp.n + 1 || pp.h.size() != pp.ell + 1) {
    Throw(ErrorCode::kDecodeError, "expected n+1 u bases and ell+1 h bases");
  }
  pp.egg = Pair(pp.g1, pp.g2);
  return pp;
}

Json ToJson(const MasterKey& mk, const PublicParams& pp) {
  Json j = Header("master_key", pp.kind());
  j["alpha"] = mk.alpha.ToHex();
  j["msk"] = ElemHex(mk.msk);
  return j;
}

MasterKey MasterKeyFromJson(const Json& j, const PublicParams& pp) {
  CheckHeader(j, "master_key", pp.kind());
  auto alpha = Scalar::FromBytes(FromHex(Field<std::string>(j, "alpha")));
  if (!alpha || alpha->IsZero()) Throw(ErrorCode::kDecodeError, "bad master exponent");
  MasterKey mk{*alpha, ElemFromHex(Child(j, "msk"), pp.kind(), Group::kG2)};
  if (!(mk.msk == pp.g2.Pow(mk.alpha)) || !(pp.g1 == pp.g.in_g1.Pow(mk.alpha))) {
    Throw(ErrorCode::kDecodeError, "master key does not match the public parameters");
  }
  return mk;
}

Json StateToJson(const RevocationTree& st, const RevocationList& rl,
                 const PublicParams& pp) {
  Json j = Header("state", pp.kind());
  j["depth"] = st.depth();
  j["leaf_policy"] = st.policy() == LeafPolicy::kFirstFree ? "first-free" : "random";
  j["assignments"] = Json::array();
  for (const auto& [id, leaf] : st.assignments()) {
    j["assignments"].push_back(Json{{"id", id.ToString()}, {"leaf", leaf}});
  }
  j["node_secrets"] = Json::array();
  for (const auto& [x, secret] : st.secrets()) {
    j["node_secrets"].push_back(Json{{"node", x.ToString()},
                                     {"g_x0", ElemHex(secret.share0)},
                                     {"g_x1", ElemHex(secret.share1)}});
  }
  j["revocations"] = Json::array();
  for (const auto& [id, from] : rl.entries()) {
    j["revocations"].push_back(Json{{"id", id.ToString()}, {"from", from.value}});
  }
  return j;
}

std::pair<RevocationTree, RevocationList> StateFromJson(const Json& j,
                                                        const PublicParams& pp) {
  CheckHeader(j, "state", pp.kind());
  if (Field<unsigned>(j, "depth") != pp.n) {
    Throw(ErrorCode::kDecodeError, "state tree depth differs from n");
  }
  const auto policy_name = Field<std::string>(j, "leaf_policy");
  if (policy_name != "first-free" && policy_name != "random") {
    Throw(ErrorCode::kDecodeError, "unknown leaf policy '" + policy_name + "'");
  }
  RevocationTree st(pp.n, policy_name == "random" ? LeafPolicy::kRandom
                                                  : LeafPolicy::kFirstFree);
  for (const auto& a : Child(j, "assignments")) {
    st.RestoreAssignment(Identity::Parse(Field<std::string>(a, "id")),
                         Field<std::uint64_t>(a, "leaf"));
  }
  for (const auto& s : Child(j, "node_secrets")) {
    st.RestoreSecret(NodeLabel::Parse(Field<std::string>(s, "node")),
                     NodeSecret{ElemFromHex(Child(s, "g_x0"), pp.kind(), Group::kG2),
                                ElemFromHex(Child(s, "g_x1"), pp.kind(), Group::kG2)},
                     pp.g2);
  }
  RevocationList rl;
  for (const auto& r : Child(j, "revocations")) {
    const TimePeriod from{Field<std::uint64_t>(r, "from")};
    CheckTime(from, pp.ell);
    Revoke(Identity::Parse(Field<std::string>(r, "id")), from, rl, st);
  }
  return {std::move(st), std::move(rl)};
}

Json ToJson(const PrivateKey& sk, const PublicParams& pp) {
  Json j = Header("private_key", pp.kind());
  j["id"] = sk.id.ToString();
  j["leaf"] = sk.leaf;
  j["entries"] = PairMapToJson(sk.entries);
  return j;
}

PrivateKey PrivateKeyFromJson(const Json& j, const PublicParams& pp) {
  CheckHeader(j, "private_key", pp.kind());
  PrivateKey sk;
  sk.id = Identity::Parse(Field<std::string>(j, "id"));
  if (sk.id.length() != pp.n) Throw(ErrorCode::kInvalidIdentity, "identity length != n");
  sk.leaf = Field<std::uint64_t>(j, "leaf");
  sk.entries = PairMapFromJson(Child(j, "entries"), pp.kind());
  const auto path = Path(LeafLabel(sk.leaf, pp.n), pp.n);
  if (sk.entries.size() != path.size()) {
    Throw(ErrorCode::kDecodeError, "private key entries do not match the leaf path");
  }
  for (const auto& x : path) {
    if (!sk.entries.contains(x)) {
      Throw(ErrorCode::kDecodeError, "private key lacks path node '" + x.Display() + "'");
    }
  }
  return sk;
}

Json ToJson(const KeyUpdate& ku, const PublicParams& pp) {
  Json j = Header("key_update", pp.kind());
  j["t"] = ku.t.value;
  j["entries"] = PairMapToJson(ku.entries);
  return j;
}

KeyUpdate KeyUpdateFromJson(const Json& j, const PublicParams& pp) {
  CheckHeader(j, "key_update", pp.kind());
  KeyUpdate ku;
  ku.t = TimePeriod{Field<std::uint64_t>(j, "t")};
  CheckTime(ku.t, pp.ell);
  ku.entries = PairMapFromJson(Child(j, "entries"), pp.kind());
  for (const auto& [x, kp] : ku.entries) {
    if (x.depth() > pp.n) Throw(ErrorCode::kDecodeError, "key update node below the leaves");
    for (const auto& [y, other] : ku.entries) {
      if (x != y && x.IsPrefixOf(y)) {
        Throw(ErrorCode::kDecodeError, "key update nodes overlap");
      }
    }
  }
  return ku;
}

Json ToJson(const DecryptionKey& dk, const PublicParams& pp) {
  Json j = Header("decryption_key", pp.kind());
  j["id"] = dk.id.ToString();
  j["t"] = dk.t.value;
  j["d1"] = ElemHex(dk.d1);
  j["d2"] = ElemHex(dk.d2);
  j["d3"] = ElemHex(dk.d3);
  return j;
}

DecryptionKey DecryptionKeyFromJson(const Json& j, const PublicParams& pp) {
  CheckHeader(j, "decryption_key", pp.kind());
  DecryptionKey dk;
  dk.id = Identity::Parse(Field<std::string>(j, "id"));
  if (dk.id.length() != pp.n) Throw(ErrorCode::kInvalidIdentity, "identity length != n");
  dk.t = TimePeriod{Field<std::uint64_t>(j, "t")};
  CheckTime(dk.t, pp.ell);
  dk.d1 = ElemFromHex(Child(j, "d1"), pp.kind(), Group::kG2);
  dk.d2 = ElemFromHex(Child(j, "d2"), pp.kind(), Group::kG2);
  dk.d3 = ElemFromHex(Child(j, "d3"), pp.kind(), Group::kG2);
  return dk;
}

Json ToJson(const Ciphertext& ct, const PublicParams& pp) {
  Json j = Header("ciphertext", pp.kind());
  j["variant"] = VariantName(ct.variant);
  j["id"] = ct.id.ToString();
  j["t"] = ct.t.value;
  if (ct.base) j["base"] = BaseToJson(*ct.base);
  j["nodes"] = Json::array();
  for (const auto& [label, comp] : ct.nodes) {
    Json node{{"label", label.ToString()}, {"c0", ElemHex(comp.c0)}};
    node["tail"] = Json::array();
    for (const auto& e : comp.tail) node["tail"].push_back(ElemHex(e));
    if (comp.own) node["own"] = BaseToJson(*comp.own);
    j["nodes"].push_back(std::move(node));
  }
  return j;
}

Ciphertext CiphertextFromJson(const Json& j, const PublicParams& pp) {
  CheckHeader(j, "ciphertext", pp.kind());
  const Backend b = pp.kind();
  Ciphertext ct;
  ct.variant = ParseVariant(Field<std::string>(j, "variant"));
  ct.id = Identity::Parse(Field<std::string>(j, "id"));
  if (ct.id.length() != pp.n) Throw(ErrorCode::kInvalidIdentity, "identity length != n");
  ct.t = TimePeriod{Field<std::uint64_t>(j, "t")};
  CheckTime(ct.t, pp.ell);

  const bool corrected = ct.variant == SchemeVariant::kCorrectedParallel;
  if (j.contains("base") == corrected) {
    Throw(ErrorCode::kVariantMismatch, "base components do not match the variant");
  }
  if (!corrected) ct.base = BaseFromJson(j["base"], b);

  for (const auto& node : Child(j, "nodes")) {
    NodeComponent comp;
    comp.label = NodeLabel::Parse(Field<std::string>(node, "label"));
    if (comp.label.depth() > pp.ell) {
      Throw(ErrorCode::kDecodeError, "ciphertext node below the time leaves");
    }
    comp.c0 = ElemFromHex(Child(node, "c0"), b, Group::kG1);
    for (const auto& e : Child(node, "tail")) {
      comp.tail.push_back(ElemFromHex(e, b, Group::kG1));
    }
    if (comp.tail.size() != pp.ell - comp.label.depth()) {
      Throw(ErrorCode::kDecodeError, "node '" + comp.label.Display() +
                                         "' has the wrong tail length");
    }
    if (node.contains("own") != corrected) {
      Throw(ErrorCode::kVariantMismatch, "node sub-ciphertext does not match the variant");
    }
    if (corrected) comp.own = BaseFromJson(node["own"], b);
    const NodeLabel label = comp.label;
    if (!ct.nodes.emplace(label, std::move(comp)).second) {
      Throw(ErrorCode::kDecodeError, "duplicate node '" + label.Display() + "'");
    }
  }
  const NodeSet expected = CtNodes(pp.ell, ct.t);
  bool same = expected.size() == ct.nodes.size();
  for (const auto& v : expected) same = same && ct.nodes.contains(v);
  if (!same) {
    Throw(ErrorCode::kDecodeError, "ciphertext nodes differ from the cover of time " +
                                       std::to_string(ct.t.value));
  }
  return ct;
}

Json TraceToJson(const Randomness& rng) {
  Json out = Json::array();
  for (const auto& e : rng.trace()) {
    out.push_back(Json{{"label", e.label}, {"value", e.value.ToHex()}});
  }
  return out;
}

Json ToJson(const FailureReport& report) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "failure_report";
  j["backend"] = BackendName(report.backend);
  j["n"] = report.n;
  j["ell"] = report.ell;
  j["seed"] = report.seed;
  j["variant"] = VariantName(report.variant);
  j["mode"] = ModeName(report.mode);
  j["recovered"] = report.recovered();
  j["wrong"] = report.wrong();
  j["residual_checked"] = std::any_of(report.cells.begin(), report.cells.end(),
                                      [](const auto& c) { return c.residual_ok.has_value(); });
  j["residual_mismatches"] = report.residual_mismatches();
  j["matches_expectation"] = report.MatchesExpectation();
  j["cells"] = Json::array();
  for (const auto& c : report.cells) {
    Json cell{{"t", c.ct_time.value},
              {"t_key", c.key_time.value},
              {"outcome", OutcomeName(c.outcome)}};
    if (c.residual_ok) cell["residual_ok"] = *c.residual_ok;
    j["cells"].push_back(std::move(cell));
  }
  return j;
}

Json ToJson(const AttackReport& report) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "attack_report";
  j["backend"] = BackendName(report.backend);
  j["n"] = report.n;
  j["ell"] = report.ell;
  j["trials"] = Json::array();
  for (const auto& t : report.trials) {
    Json trial{{"variant", VariantName(t.variant)},
               {"seed", t.seed},
               {"ct_time", t.ct_time.value},
               {"target", t.target.value},
               {"constructible", t.constructible},
               {"recovered", t.recovered}};
    if (t.constructible) {
      trial["base"] = t.base_source;
      trial["transcript"] = Json::array();
      for (const auto& term : t.terms) {
        trial["transcript"].push_back(
            Json{{"source", term.source}, {"exponent", CoefficientText(term.coefficient)}});
      }
    }
    j["trials"].push_back(std::move(trial));
  }
  return j;
}

Json ToJson(const SizeCensus& census) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "size_census";
  j["n"] = census.n;
  j["ell"] = census.ell;
  j["variant"] = VariantName(census.variant);
  j["private_key"] = Json{{"entries", census.private_key_entries},
                          {"elements", census.private_key_elements}};
  j["key_update_unrevoked"] = Json{{"entries", census.key_update_entries},
                                   {"elements", census.key_update_elements}};
  j["decryption_key_elements"] = census.decryption_key_elements;
  j["ciphertexts"] = Json::array();
  for (const auto& c : census.ciphertexts) {
    j["ciphertexts"].push_back(Json{{"t", c.t.value},
                                    {"nodes", c.nodes},
                                    {"source_elements", c.source_elements},
                                    {"gt_elements", c.gt_elements},
                                    {"total", c.total()}});
  }
  return j;
}

}  // namespace rsibe

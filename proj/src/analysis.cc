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

#include "rsibe/analysis.h"

#include <random>
#include <utility>

#include "rsibe/error.h"

namespace rsibe {

namespace {

// 1010... of length n.
Identity AlternatingIdentity(unsigned n) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < n; ++i) v = (v << 1) | ((i % 2 == 0) ? 1u : 0u);
  return Identity(v, n);
}

std::optional<NodeLabel> CommonNode(const PrivateKey& sk, const KeyUpdate& ku) {
  for (const auto& [x, entry] : sk.entries) {
    if (ku.entries.contains(x)) return x;
  }
  return std::nullopt;
}

std::string SiteLabel(std::string_view prefix, const NodeLabel& node) {
  return std::string(prefix) + "[" + node.ToString() + "]";
}

// Exponent vector of F(b) over (h_0, ..., h_ell).
std::vector<Scalar> LabelVector(const NodeLabel& label, unsigned ell) {
  std::vector<Scalar> v(ell + 1);
  v[0] = Scalar::FromUint64(1);
  for (unsigned j = 1; j <= label.depth(); ++j) {
    if (label.Bit(j - 1)) v[j] = Scalar::FromUint64(1);
  }
  return v;
}

}  // namespace

const char* OutcomeName(Outcome o) {
  return o == Outcome::kMessageRecovered ? "MESSAGE_RECOVERED" : "WRONG_RESULT";
}

std::size_t FailureReport::recovered() const {
  std::size_t count = 0;
  for (const auto& c : cells) count += c.outcome == Outcome::kMessageRecovered;
  return count;
}

std::size_t FailureReport::wrong() const { return cells.size() - recovered(); }

std::size_t FailureReport::residual_mismatches() const {
  std::size_t count = 0;
  for (const auto& c : cells) count += c.residual_ok.has_value() && !*c.residual_ok;
  return count;
}

bool FailureReport::MatchesExpectation() const {
  for (const auto& c : cells) {
    const bool expect_recovered =
        variant != SchemeVariant::kWeiOriginal || c.ct_time == c.key_time;
    if ((c.outcome == Outcome::kMessageRecovered) != expect_recovered) return false;
  }
  return residual_mismatches() == 0;
}

FailureReport ReproduceFailure(unsigned n, unsigned ell, std::uint64_t seed,
                               SchemeVariant variant, DelegationMode mode,
                               Backend backend) {
  const bool mock = backend == Backend::kMock;
  Randomness rng(seed, "reproduce_failure", /*trace=*/mock);
  auto [mk, pp, st, rl] = Setup(128, std::uint64_t{1} << n, std::uint64_t{1} << ell,
                                BackendConfig{backend, 128, mock}, rng);
  const Identity id = AlternatingIdentity(n);
  const PrivateKey sk = GenKey(id, mk, st, pp, rng);
  const std::uint64_t periods = std::uint64_t{1} << ell;

  std::vector<DecryptionKey> dks;
  std::vector<Scalar> rho1;  // total randomness on F_h(t') inside D_1
  for (std::uint64_t tk = 0; tk < periods; ++tk) {
    const KeyUpdate ku = UpdateKey(TimePeriod{tk}, rl, mk, st, pp, rng);
    dks.push_back(DeriveDk(sk, ku, pp, rng));
    if (mock) {
      const NodeLabel x = *CommonNode(sk, ku);
      rho1.push_back(*rng.Last(SiteLabel("update_key.r_x1", x)) +
                     *rng.Last("derive_dk.r1"));
    }
  }

  const bool check_residual = mock && mode == DelegationMode::kBitCorrected &&
                              variant != SchemeVariant::kCorrectedParallel;
  const GroupElem m = MessageFromSeed(backend, seed);

  FailureReport report;
  report.n = n;
  report.ell = ell;
  report.seed = seed;
  report.variant = variant;
  report.mode = mode;
  report.backend = backend;
  for (std::uint64_t t = 0; t < periods; ++t) {
    const Ciphertext ct = Encrypt(id, TimePeriod{t}, m, pp, variant, rng);
    const NodeSet nodes = CtNodes(ell, TimePeriod{t});
    const NodeLabel leaf = TimeLeaf(TimePeriod{t}, ell);
    Scalar s;
    std::map<NodeLabel, Scalar> node_exponent;
    if (check_residual) {
      s = *rng.Last("encrypt.s");
      for (const auto& v : nodes) {
        const bool own_draw = variant == SchemeVariant::kWeiOriginal && v != leaf;
        node_exponent[v] = own_draw ? *rng.Last(SiteLabel("encrypt.s_v", v)) : s;
      }
    }
    for (std::uint64_t tk = t; tk < periods; ++tk) {
      const GroupElem out = Decrypt(ct, dks[tk], pp, rng, mode);
      FailureCell cell{TimePeriod{t}, TimePeriod{tk},
                       out == m ? Outcome::kMessageRecovered : Outcome::kWrongResult,
                       std::nullopt};
      if (check_residual) {
        const NodeLabel anc = FindPrefixAncestor(nodes, TimeLeaf(TimePeriod{tk}, ell));
        const Scalar expected = (node_exponent.at(anc) - s) * rho1[tk] *
                                Dlog(pp.g.in_g2) *
                                Dlog(HashTime(pp, TimePeriod{tk}, Group::kG1));
        cell.residual_ok = (Dlog(out) - Dlog(m)) == expected;
      }
      report.cells.push_back(cell);
    }
  }
  return report;
}

std::optional<std::vector<Scalar>> SolveLinearSystem(
    std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) {
    Throw(ErrorCode::kInvalidParameter, "right-hand side does not match the matrix");
  }
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != cols) Throw(ErrorCode::kInvalidParameter, "ragged matrix");
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col].IsZero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    std::swap(b[pivot], b[rank]);
    const Scalar inv = a[rank][col].Inverse();
    for (auto& x : a[rank]) x *= inv;
    b[rank] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col].IsZero()) continue;
      const Scalar f = a[r][col];
      for (std::size_t c = 0; c < cols; ++c) a[r][c] -= f * a[rank][c];
      b[r] -= f * b[rank];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (!b[r].IsZero()) return std::nullopt;
  }
  std::vector<Scalar> x(cols);
  for (std::size_t i = 0; i < rank; ++i) x[pivot_cols[i]] = b[i];
  return x;
}

std::optional<Forgery> RollbackAttack(const Ciphertext& ct, TimePeriod target,
                                      const PublicParams& pp) {
  CheckTime(target, pp.ell);
  if (!(target < ct.t)) {
    Throw(ErrorCode::kInvalidTarget, "rollback target " + std::to_string(target.value) +
                                         " is not before the ciphertext time " +
                                         std::to_string(ct.t.value));
  }

  struct Column {
    std::string source;
    const NodeComponent* node;
    const GroupElem* elem;
    std::vector<Scalar> vec;
  };
  std::vector<Column> columns;
  for (const auto& [label, comp] : ct.nodes) {
    const std::string name = "C[" + label.Display() + "]";
    columns.push_back({name + ".c0", &comp, &comp.c0, LabelVector(label, pp.ell)});
    for (unsigned j = label.depth() + 1; j <= pp.ell; ++j) {
      std::vector<Scalar> e(pp.ell + 1);
      e[j] = Scalar::FromUint64(1);
      columns.push_back({name + ".tail[h" + std::to_string(j) + "]", &comp,
                         &comp.TailAt(j), std::move(e)});
    }
  }

  const NodeLabel leaf = TimeLeaf(target, pp.ell);
  std::vector<std::vector<Scalar>> a(pp.ell + 1, std::vector<Scalar>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (unsigned r = 0; r <= pp.ell; ++r) a[r][c] = columns[c].vec[r];
  }
  auto solution = SolveLinearSystem(std::move(a), LabelVector(leaf, pp.ell));
  if (!solution) return std::nullopt;

  Forgery forgery;
  GroupElem forged = GroupElem::Identity(pp.kind(), Group::kG1);
  const NodeComponent* base_node = nullptr;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Scalar& coef = (*solution)[c];
    if (coef.IsZero()) continue;
    forged *= columns[c].elem->Pow(coef);
    forgery.terms.push_back({columns[c].source, coef});
    if (base_node == nullptr) base_node = columns[c].node;
  }

  Ciphertext& out = forgery.ciphertext;
  out.variant = ct.variant;
  out.id = ct.id;
  out.t = target;
  NodeComponent comp{leaf, forged, {}, std::nullopt};
  if (ct.base) {
    out.base = ct.base;
    forgery.base_source = "(C0, C1, C2)";
  } else {
    if (base_node == nullptr || !base_node->own) return std::nullopt;
    comp.own = base_node->own;
    forgery.base_source = "C[" + base_node->label.Display() + "].(A, B, C)";
  }
  out.nodes.emplace(leaf, std::move(comp));
  return forgery;
}

GroupElem OpenForgery(const Forgery& forgery, const DecryptionKey& dk) {
  const Ciphertext& ct = forgery.ciphertext;
  const NodeComponent& leaf = ct.nodes.begin()->second;
  return Unmask(ct.base ? *ct.base : *leaf.own, leaf.c0, dk);
}

AttackTrial RunRollbackTrial(unsigned n, unsigned ell, TimePeriod ct_time,
                             TimePeriod target, SchemeVariant variant,
                             std::uint64_t seed, Backend backend) {
  Randomness rng(seed, "rollback");
  auto [mk, pp, st, rl] = Setup(128, std::uint64_t{1} << n, std::uint64_t{1} << ell,
                                BackendConfig{backend, 128, false}, rng);
  const Identity id = AlternatingIdentity(n);
  const PrivateKey sk = GenKey(id, mk, st, pp, rng);
  const DecryptionKey old_key =
      DeriveDk(sk, UpdateKey(target, rl, mk, st, pp, rng), pp, rng);
  Revoke(id, ct_time, rl, st);

  const GroupElem m = MessageFromSeed(backend, seed);
  const Ciphertext ct = Encrypt(id, ct_time, m, pp, variant, rng);

  AttackTrial trial;
  trial.variant = variant;
  trial.seed = seed;
  trial.ct_time = ct_time;
  trial.target = target;
  auto forgery = RollbackAttack(ct, target, pp);
  trial.constructible = forgery.has_value();
  if (forgery) {
    trial.recovered = OpenForgery(*forgery, old_key) == m;
    trial.terms = forgery->terms;
    trial.base_source = forgery->base_source;
  }
  return trial;
}

AttackReport DemonstrateRollback(unsigned n, unsigned ell, TimePeriod ct_time,
                                 TimePeriod target, std::uint64_t seed,
                                 unsigned trials, Backend backend) {
  AttackReport report{n, ell, backend, {}};
  for (auto variant : {SchemeVariant::kNaiveSharedS, SchemeVariant::kWeiOriginal,
                       SchemeVariant::kCorrectedParallel}) {
    for (unsigned i = 0; i < trials; ++i) {
      report.trials.push_back(
          RunRollbackTrial(n, ell, ct_time, target, variant, seed + i, backend));
    }
  }
  return report;
}

bool CheckRerandomization(const Ciphertext& before, const Ciphertext& after,
                          const PublicParams& pp) {
  if (pp.kind() != Backend::kMock) {
    Throw(ErrorCode::kRequiresMockBackend, "re-randomization check reads exponents");
  }
  if (before.variant != after.variant || !(before.id == after.id)) return false;

  const NodeSet expected = CtNodes(pp.ell, after.t);
  if (after.nodes.size() != expected.size()) return false;
  for (const auto& v : expected) {
    if (!after.nodes.contains(v)) return false;
  }

  const Scalar dlog_g = Dlog(pp.g.in_g1);
  const Scalar dlog_egg = Dlog(pp.egg);
  const Scalar dlog_fu = Dlog(HashIdentity(pp, after.id, Group::kG1));

  // Exponent x with (c1, c2) = (g^{-x}, F_u^x), if coherent.
  auto base_exponent = [&](const CiphertextBase& b) -> std::optional<Scalar> {
    const Scalar x = -(Dlog(b.c1) * dlog_g.Inverse());
    if (!(Dlog(b.c2) == x * dlog_fu)) return std::nullopt;
    return x;
  };
  // Exponent y with c0 = F(b_v)^y and tail_j = h_j^y, if coherent.
  auto node_exponent = [&](const NodeComponent& c) -> std::optional<Scalar> {
    const Scalar y =
        Dlog(c.c0) * Dlog(HashLabel(pp, c.label, Group::kG1)).Inverse();
    if (c.tail.size() != pp.ell - c.label.depth()) return std::nullopt;
    for (unsigned j = c.label.depth() + 1; j <= pp.ell; ++j) {
      if (!(Dlog(c.TailAt(j)) == y * Dlog(pp.h[j].in_g1))) return std::nullopt;
    }
    return y;
  };
  auto mask_moved = [&](const CiphertextBase& from, const CiphertextBase& to,
                        const Scalar& x_from, const Scalar& x_to) {
    return Dlog(to.c0) - Dlog(from.c0) == (x_to - x_from) * dlog_egg;
  };

  const NodeLabel leaf = TimeLeaf(after.t, pp.ell);
  if (after.variant != SchemeVariant::kCorrectedParallel) {
    if (!before.base || !after.base) return false;
    const auto xb = base_exponent(*before.base);
    const auto xa = base_exponent(*after.base);
    if (!xb || !xa || !mask_moved(*before.base, *after.base, *xb, *xa)) return false;
    for (const auto& [label, comp] : after.nodes) {
      const auto y = node_exponent(comp);
      if (!y) return false;
      const bool tied = after.variant == SchemeVariant::kNaiveSharedS || label == leaf;
      if (tied && !(*y == *xa)) return false;
    }
    return true;
  }

  NodeSet old_labels;
  for (const auto& [label, comp] : before.nodes) old_labels.insert(label);
  for (const auto& [label, comp] : after.nodes) {
    if (!comp.own) return false;
    const auto y = node_exponent(comp);
    const auto x = base_exponent(*comp.own);
    if (!y || !x || !(*y == *x)) return false;
    const NodeLabel* anc = nullptr;
    for (const auto& c : old_labels) {
      if (c.IsPrefixOf(label)) anc = &c;
    }
    if (anc == nullptr) return false;
    const NodeComponent& src = before.nodes.at(*anc);
    if (!src.own) return false;
    const auto x_src = base_exponent(*src.own);
    if (!x_src || !mask_moved(*src.own, *comp.own, *x_src, *x)) return false;
  }
  return true;
}

SizeCensus CensusSizes(unsigned n, unsigned ell, SchemeVariant variant) {
  SizeCensus census;
  census.n = n;
  census.ell = ell;
  census.variant = variant;
  census.private_key_entries = n + 1;
  census.private_key_elements = 2 * (n + 1);
  census.key_update_entries = 1;
  census.key_update_elements = 2;
  census.decryption_key_elements = 3;
  const std::uint64_t periods = std::uint64_t{1} << ell;
  for (std::uint64_t t = 0; t < periods; ++t) {
    CiphertextSize size;
    size.t = TimePeriod{t};
    const NodeSet nodes = CtNodes(ell, size.t);
    size.nodes = nodes.size();
    for (const auto& v : nodes) size.source_elements += ell - v.depth() + 1;
    if (variant == SchemeVariant::kCorrectedParallel) {
      size.source_elements += 2 * nodes.size();
      size.gt_elements = nodes.size();
    } else {
      size.source_elements += 2;
      size.gt_elements = 1;
    }
    census.ciphertexts.push_back(size);
  }
  return census;
}

CiphertextSize CountElements(const Ciphertext& ct) {
  CiphertextSize size;
  size.t = ct.t;
  size.nodes = ct.nodes.size();
  auto add_base = [&size](const CiphertextBase&) {
    size.source_elements += 2;
    size.gt_elements += 1;
  };
  if (ct.base) add_base(*ct.base);
  for (const auto& [label, comp] : ct.nodes) {
    size.source_elements += 1 + comp.tail.size();
    if (comp.own) add_base(*comp.own);
  }
  return size;
}

std::vector<std::string> RunScenario(std::uint64_t seed, Backend backend) {
  constexpr unsigned kIdBits = 2;
  constexpr unsigned kTimeBits = 3;
  constexpr std::uint64_t kPeriods = 1u << kTimeBits;

  std::mt19937_64 script(seed);
  Randomness rng(seed, "scenario");
  auto [mk, pp, st, rl] =
      Setup(128, 1u << kIdBits, kPeriods, BackendConfig{backend, 128, false}, rng);

  std::vector<std::string> log;
  std::vector<PrivateKey> keys;
  const unsigned users = 2 + static_cast<unsigned>(script() % 3);
  for (unsigned i = 0; i < users; ++i) {
    keys.push_back(GenKey(Identity(i, kIdBits), mk, st, pp, rng));
    log.push_back("keygen " + keys.back().id.ToString());
  }
  if (script() % 2 == 0) {
    const auto& victim = keys[script() % keys.size()];
    const TimePeriod from{script() % kPeriods};
    Revoke(victim.id, from, rl, st);
    log.push_back("revoke " + victim.id.ToString() + " from " + std::to_string(from.value));
  }

  for (int step = 0; step < 5; ++step) {
    const PrivateKey& sk = keys[script() % keys.size()];
    const auto variant = static_cast<SchemeVariant>(script() % 3);
    const TimePeriod t{script() % kPeriods};
    const TimePeriod moved{t.value + script() % (kPeriods - t.value)};
    // Mostly keys at or after the ciphertext period; one in four is arbitrary.
    const TimePeriod key_time{script() % 4 == 0
                                  ? script() % kPeriods
                                  : moved.value + script() % (kPeriods - moved.value)};
    const GroupElem m = MessageFromSeed(backend, script());

    std::string line = std::string("decrypt ") + VariantName(variant) + " id=" +
                       sk.id.ToString() + " ct=" + std::to_string(t.value) + "->" +
                       std::to_string(moved.value) + " key=" +
                       std::to_string(key_time.value) + ": ";
    Ciphertext ct = Encrypt(sk.id, t, m, pp, variant, rng);
    if (moved != t) ct = UpdateCt(ct, moved, pp, rng);
    try {
      const KeyUpdate ku = UpdateKey(key_time, rl, mk, st, pp, rng);
      const DecryptionKey dk = DeriveDk(sk, ku, pp, rng);
      const GroupElem out = Decrypt(ct, dk, pp, rng);
      line += OutcomeName(out == m ? Outcome::kMessageRecovered : Outcome::kWrongResult);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRevoked && e.code() != ErrorCode::kRejected) throw;
      line += ErrorCodeName(e.code());
    }
    log.push_back(std::move(line));
  }
  return log;
}

}  // namespace rsibe

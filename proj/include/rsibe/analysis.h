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
#include <optional>
#include <string>
#include <vector>

#include "rsibe/scheme.h"

namespace rsibe {

enum class Outcome { kMessageRecovered, kWrongResult };
const char* OutcomeName(Outcome o);

struct FailureCell {
  TimePeriod ct_time;
  TimePeriod key_time;
  Outcome outcome = Outcome::kWrongResult;
  // Whether dlog(output / m) equals (s_v~ - s) * rho_1 * dlog(e(F_h(t'), g)).
  // Present only for base variants on the mock backend in bit-corrected mode.
  std::optional<bool> residual_ok;
};

struct FailureReport {
  unsigned n = 0;
  unsigned ell = 0;
  std::uint64_t seed = 0;
  SchemeVariant variant = SchemeVariant::kWeiOriginal;
  DelegationMode mode = DelegationMode::kBitCorrected;
  Backend backend = Backend::kMock;
  std::vector<FailureCell> cells;  // every (t, t') with t <= t'

  std::size_t recovered() const;
  std::size_t wrong() const;
  std::size_t residual_mismatches() const;
  // Wei: recovered exactly on the diagonal. Other variants: everywhere.
  bool MatchesExpectation() const;
};

// Encrypts at every t, decrypts under keys for every t' >= t.
FailureReport ReproduceFailure(unsigned n, unsigned ell, std::uint64_t seed,
                               SchemeVariant variant, DelegationMode mode,
                               Backend backend = Backend::kMock);

// Gaussian elimination over Z_p. `a` is row-major (rows = equations).
// Returns one solution with free variables set to zero, or nullopt.
std::optional<std::vector<Scalar>> SolveLinearSystem(
    std::vector<std::vector<Scalar>> a, std::vector<Scalar> b);

struct ForgeryTerm {
  std::string source;  // e.g. "C[011].c0", "C[1].tail[h2]"
  Scalar coefficient;
};

struct Forgery {
  // Period `target`, holding only the forged leaf component.
  Ciphertext ciphertext;
  std::vector<ForgeryTerm> terms;
  std::string base_source;
};

// Rolls a ciphertext back to an earlier period using public data only.
//
// Each node element is F(b_v)^{s_v} or h_j^{s_v}: a known 0/1 vector over
// (h_0, ..., h_ell) scaled by its exponent. The attack solves for a
// combination of those vectors equal to the target leaf's vector and raises
// the elements to the solution. When all exponents agree (the naive
// variant) the product is F_h(target)^s. Returns nullopt when the system has
// no solution. Throws kInvalidTarget unless target < ct.t.
std::optional<Forgery> RollbackAttack(const Ciphertext& ct, TimePeriod target,
                                      const PublicParams& pp);

GroupElem OpenForgery(const Forgery& forgery, const DecryptionKey& dk);

struct AttackTrial {
  SchemeVariant variant = SchemeVariant::kNaiveSharedS;
  std::uint64_t seed = 0;
  TimePeriod ct_time;
  TimePeriod target;
  bool constructible = false;
  bool recovered = false;
  std::vector<ForgeryTerm> terms;
  std::string base_source;
};

// A user holding a key for `target` is revoked at `ct_time`; a fresh
// ciphertext at `ct_time` is rolled back and opened with the old key.
AttackTrial RunRollbackTrial(unsigned n, unsigned ell, TimePeriod ct_time,
                             TimePeriod target, SchemeVariant variant,
                             std::uint64_t seed, Backend backend = Backend::kMock);

struct AttackReport {
  unsigned n = 0;
  unsigned ell = 0;
  Backend backend = Backend::kMock;
  std::vector<AttackTrial> trials;
};

// `trials` seeds (seed, seed+1, ...) against each of the three variants.
AttackReport DemonstrateRollback(unsigned n, unsigned ell, TimePeriod ct_time,
                                 TimePeriod target, std::uint64_t seed,
                                 unsigned trials, Backend backend = Backend::kMock);

// True iff `after` has the exponent structure of a fresh encryption at its
// own period: one coherent exponent per node, base/leaf agreement for the
// base variants, and a consistent message mask relative to `before`.
// Throws kRequiresMockBackend on the curve backend.
bool CheckRerandomization(const Ciphertext& before, const Ciphertext& after,
                          const PublicParams& pp);

struct CiphertextSize {
  TimePeriod t;
  std::size_t nodes = 0;
  std::size_t source_elements = 0;  // G1
  std::size_t gt_elements = 0;
  std::size_t total() const { return source_elements + gt_elements; }
};

struct SizeCensus {
  unsigned n = 0;
  unsigned ell = 0;
  SchemeVariant variant = SchemeVariant::kWeiOriginal;
  std::size_t private_key_entries = 0;
  std::size_t private_key_elements = 0;
  std::size_t key_update_entries = 0;  // with no revocations
  std::size_t key_update_elements = 0;
  std::size_t decryption_key_elements = 0;
  std::vector<CiphertextSize> ciphertexts;  // one per period
};

SizeCensus CensusSizes(unsigned n, unsigned ell, SchemeVariant variant);
// Counts the elements actually present in `ct`.
CiphertextSize CountElements(const Ciphertext& ct);

// A seeded mixed keygen/revoke/encrypt/update/decrypt script. Returns one
// line per step describing its outcome; identical seeds give identical
// scalar streams on both backends.
std::vector<std::string> RunScenario(std::uint64_t seed, Backend backend);

}  // namespace rsibe

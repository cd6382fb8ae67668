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

#include "rsibe/group.h"

#include <cstring>
#include <string>

#include "rsibe/error.h"

namespace rsibe {

namespace {

constexpr std::size_t kFpBytes = 48;
constexpr std::size_t kG1Compressed = 48;
constexpr std::size_t kG2Compressed = 96;
constexpr std::size_t kGtBytes = 12 * kFpBytes;

void RequireSameGroup(const GroupElem& a, const GroupElem& b) {
  if (a.backend() != b.backend()) {
    Throw(ErrorCode::kBackendMismatch, "operands come from different backends");
  }
  if (a.group() != b.group()) {
    Throw(ErrorCode::kGroupMismatch, std::string("cannot combine ") +
                                         GroupName(a.group()) + " with " +
                                         GroupName(b.group()));
  }
}

blst_fp12 GtPow(const blst_fp12& base, const Scalar& e) {
  blst_fp12 acc = *blst_fp12_one();
  bool started = false;
  for (std::uint8_t byte : e.ToBytes()) {
    for (int bit = 7; bit >= 0; --bit) {
      if (started) blst_fp12_sqr(&acc, &acc);
      if ((byte >> bit) & 1) {
        blst_fp12_mul(&acc, &acc, &base);
        started = true;
      }
    }
  }
  return acc;
}

blst_fp12 CurvePairing(const blst_p1& p, const blst_p2& q) {
  if (blst_p1_is_inf(&p) || blst_p2_is_inf(&q)) return *blst_fp12_one();
  blst_p1_affine pa;
  blst_p2_affine qa;
  blst_p1_to_affine(&pa, &p);
  blst_p2_to_affine(&qa, &q);
  blst_fp12 miller;
  blst_miller_loop(&miller, &qa, &pa);
  blst_fp12 out;
  blst_final_exp(&out, &miller);
  return out;
}

const blst_fp12& CurveGtGenerator() {
  static const blst_fp12 kGen =
      CurvePairing(*blst_p1_generator(), *blst_p2_generator());
  return kGen;
}

}  // namespace

const char* BackendName(Backend b) {
  return b == Backend::kMock ? "mock" : "curve";
}

Backend ParseBackend(std::string_view name) {
  if (name == "mock") return Backend::kMock;
  if (name == "curve") return Backend::kCurve;
  Throw(ErrorCode::kInvalidParameter, "unknown backend '" + std::string(name) + "'");
}

const char* GroupName(Group g) {
  switch (g) {
    case Group::kG1: return "G1";
    case Group::kG2: return "G2";
    case Group::kGT: return "GT";
  }
  return "?";
}

GroupElem GroupElem::Identity(Backend backend, Group group) {
  if (backend == Backend::kMock) return GroupElem(backend, group, Scalar());
  switch (group) {
    case Group::kG1: {
      blst_p1 p;
      std::memset(&p, 0, sizeof(p));
      return GroupElem(backend, group, p);
    }
    case Group::kG2: {
      blst_p2 p;
      std::memset(&p, 0, sizeof(p));
      return GroupElem(backend, group, p);
    }
    case Group::kGT:
      return GroupElem(backend, group, *blst_fp12_one());
  }
  Throw(ErrorCode::kGroupMismatch, "bad group tag");
}

GroupElem GroupElem::Generator(Backend backend, Group group) {
  if (backend == Backend::kMock) {
    return GroupElem(backend, group, Scalar::FromUint64(1));
  }
  switch (group) {
    case Group::kG1: return GroupElem(backend, group, *blst_p1_generator());
    case Group::kG2: return GroupElem(backend, group, *blst_p2_generator());
    case Group::kGT: return GroupElem(backend, group, CurveGtGenerator());
  }
  Throw(ErrorCode::kGroupMismatch, "bad group tag");
}

bool GroupElem::IsIdentity() const {
  return *this == Identity(backend_, group_);
}

GroupElem GroupElem::Pow(const Scalar& e) const {
  if (backend_ == Backend::kMock) {
    return GroupElem(backend_, group_, std::get<Scalar>(payload_) * e);
  }
  switch (group_) {
    case Group::kG1: {
      auto le = e.ToLittleEndian();
      blst_p1 out;
      blst_p1_mult(&out, &std::get<blst_p1>(payload_), le.data(), Scalar::kBits);
      return GroupElem(backend_, group_, out);
    }
    case Group::kG2: {
      auto le = e.ToLittleEndian();
      blst_p2 out;
      blst_p2_mult(&out, &std::get<blst_p2>(payload_), le.data(), Scalar::kBits);
      return GroupElem(backend_, group_, out);
    }
    case Group::kGT:
      return GroupElem(backend_, group_, GtPow(std::get<blst_fp12>(payload_), e));
  }
  Throw(ErrorCode::kGroupMismatch, "bad group tag");
}

GroupElem GroupElem::Inverse() const {
  if (backend_ == Backend::kMock) {
    return GroupElem(backend_, group_, -std::get<Scalar>(payload_));
  }
  switch (group_) {
    case Group::kG1: {
      blst_p1 p = std::get<blst_p1>(payload_);
      blst_p1_cneg(&p, true);
      return GroupElem(backend_, group_, p);
    }
    case Group::kG2: {
      blst_p2 p = std::get<blst_p2>(payload_);
      blst_p2_cneg(&p, true);
      return GroupElem(backend_, group_, p);
    }
    case Group::kGT: {
      // GT lies in the cyclotomic subgroup, where inversion is conjugation.
      blst_fp12 f = std::get<blst_fp12>(payload_);
      blst_fp12_conjugate(&f);
      return GroupElem(backend_, group_, f);
    }
  }
  Throw(ErrorCode::kGroupMismatch, "bad group tag");
}

GroupElem operator*(const GroupElem& a, const GroupElem& b) {
  RequireSameGroup(a, b);
  if (a.backend_ == Backend::kMock) {
    return GroupElem(a.backend_, a.group_,
                     std::get<Scalar>(a.payload_) + std::get<Scalar>(b.payload_));
  }
  switch (a.group_) {
    case Group::kG1: {
      blst_p1 out;
      blst_p1_add_or_double(&out, &std::get<blst_p1>(a.payload_),
                            &std::get<blst_p1>(b.payload_));
      return GroupElem(a.backend_, a.group_, out);
    }
    case Group::kG2: {
      blst_p2 out;
      blst_p2_add_or_double(&out, &std::get<blst_p2>(a.payload_),
                            &std::get<blst_p2>(b.payload_));
      return GroupElem(a.backend_, a.group_, out);
    }
    case Group::kGT: {
      blst_fp12 out;
      blst_fp12_mul(&out, &std::get<blst_fp12>(a.payload_),
                    &std::get<blst_fp12>(b.payload_));
      return GroupElem(a.backend_, a.group_, out);
    }
  }
  Throw(ErrorCode::kGroupMismatch, "bad group tag");
}

GroupElem operator/(const GroupElem& a, const GroupElem& b) {
  return a * b.Inverse();
}

bool operator==(const GroupElem& a, const GroupElem& b) {
  if (a.backend_ != b.backend_ || a.group_ != b.group_) return false;
  if (a.backend_ == Backend::kMock) {
    return std::get<Scalar>(a.payload_) == std::get<Scalar>(b.payload_);
  }
  switch (a.group_) {
    case Group::kG1:
      return blst_p1_is_equal(&std::get<blst_p1>(a.payload_),
                              &std::get<blst_p1>(b.payload_));
    case Group::kG2:
      return blst_p2_is_equal(&std::get<blst_p2>(a.payload_),
                              &std::get<blst_p2>(b.payload_));
    case Group::kGT:
      return blst_fp12_is_equal(&std::get<blst_fp12>(a.payload_),
                                &std::get<blst_fp12>(b.payload_));
  }
  return false;
}

GroupElem Pair(const GroupElem& a, const GroupElem& b) {
  if (a.backend_ != b.backend_) {
    Throw(ErrorCode::kBackendMismatch, "pairing across backends");
  }
  if (a.group_ != Group::kG1 || b.group_ != Group::kG2) {
    Throw(ErrorCode::kGroupMismatch, std::string("pairing expects (G1, G2), got (") +
                                         GroupName(a.group_) + ", " +
                                         GroupName(b.group_) + ")");
  }
  if (a.backend_ == Backend::kMock) {
    return GroupElem(Backend::kMock, Group::kGT,
                     std::get<Scalar>(a.payload_) * std::get<Scalar>(b.payload_));
  }
  return GroupElem(Backend::kCurve, Group::kGT,
                   CurvePairing(std::get<blst_p1>(a.payload_),
                                std::get<blst_p2>(b.payload_)));
}

Scalar Dlog(const GroupElem& a) {
  if (a.backend_ != Backend::kMock) {
    Throw(ErrorCode::kRequiresMockBackend,
          "discrete logarithms are only available on the mock backend");
  }
  return std::get<Scalar>(a.payload_);
}

std::size_t EncodedSize(Backend backend, Group group) {
  if (backend == Backend::kMock) return 1 + Scalar::kBytes;
  switch (group) {
    case Group::kG1: return kG1Compressed;
    case Group::kG2: return kG2Compressed;
    case Group::kGT: return kGtBytes;
  }
  return 0;
}

std::vector<std::uint8_t> Serialize(const GroupElem& a) {
  std::vector<std::uint8_t> out(EncodedSize(a.backend_, a.group_));
  if (a.backend_ == Backend::kMock) {
    out[0] = static_cast<std::uint8_t>(a.group_);
    auto be = std::get<Scalar>(a.payload_).ToBytes();
    std::memcpy(out.data() + 1, be.data(), be.size());
    return out;
  }
  switch (a.group_) {
    case Group::kG1:
      blst_p1_compress(out.data(), &std::get<blst_p1>(a.payload_));
      break;
    case Group::kG2:
      blst_p2_compress(out.data(), &std::get<blst_p2>(a.payload_));
      break;
    case Group::kGT:
      blst_bendian_from_fp12(out.data(), &std::get<blst_fp12>(a.payload_));
      break;
  }
  return out;
}

GroupElem Deserialize(std::span<const std::uint8_t> bytes, Backend backend,
                      Group group) {
  const std::string what = std::string(BackendName(backend)) + " " + GroupName(group);
  if (bytes.size() != EncodedSize(backend, group)) {
    Throw(ErrorCode::kDecodeError, what + ": expected " +
                                       std::to_string(EncodedSize(backend, group)) +
                                       " bytes, got " + std::to_string(bytes.size()));
  }
  if (backend == Backend::kMock) {
    if (bytes[0] != static_cast<std::uint8_t>(group)) {
      Throw(ErrorCode::kDecodeError, what + ": wrong group tag byte");
    }
    auto s = Scalar::FromBytes(bytes.subspan(1));
    if (!s) Throw(ErrorCode::kDecodeError, what + ": exponent out of range");
    return GroupElem(backend, group, *s);
  }

  GroupElem out = GroupElem::Identity(backend, group);
  switch (group) {
    case Group::kG1: {
      blst_p1_affine aff;
      if (blst_p1_uncompress(&aff, bytes.data()) != BLST_SUCCESS) {
        Throw(ErrorCode::kDecodeError, what + ": not a valid compressed point");
      }
      if (!blst_p1_affine_in_g1(&aff)) {
        Throw(ErrorCode::kDecodeError, what + ": point outside the subgroup");
      }
      blst_p1 p;
      blst_p1_from_affine(&p, &aff);
      out = GroupElem(backend, group, p);
      break;
    }
    case Group::kG2: {
      blst_p2_affine aff;
      if (blst_p2_uncompress(&aff, bytes.data()) != BLST_SUCCESS) {
        Throw(ErrorCode::kDecodeError, what + ": not a valid compressed point");
      }
      if (!blst_p2_affine_in_g2(&aff)) {
        Throw(ErrorCode::kDecodeError, what + ": point outside the subgroup");
      }
      blst_p2 p;
      blst_p2_from_affine(&p, &aff);
      out = GroupElem(backend, group, p);
      break;
    }
    case Group::kGT: {
      blst_fp12 f;
      const std::uint8_t* cursor = bytes.data();
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          for (std::size_t k = 0; k < 2; ++k) {
            blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[k], cursor);
            cursor += kFpBytes;
          }
        }
      }
      if (!blst_fp12_in_group(&f)) {
        Throw(ErrorCode::kDecodeError, what + ": element outside the r-torsion");
      }
      out = GroupElem(backend, group, f);
      break;
    }
  }
  // Reject non-canonical encodings (unreduced coordinates, stray flag bits).
  const auto again = Serialize(out);
  if (!std::equal(again.begin(), again.end(), bytes.begin())) {
    Throw(ErrorCode::kDecodeError, what + ": non-canonical encoding");
  }
  return out;
}

}  // namespace rsibe

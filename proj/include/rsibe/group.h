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
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "blst.h"
#include "rsibe/scalar.h"

namespace rsibe {

enum class Backend : std::uint8_t { kMock, kCurve };
enum class Group : std::uint8_t { kG1 = 1, kG2 = 2, kGT = 3 };

const char* BackendName(Backend b);
Backend ParseBackend(std::string_view name);
const char* GroupName(Group g);

struct BackendConfig {
  Backend kind = Backend::kMock;
  int security_bits = 128;
  // Ask callers to keep exponent traces (mock only).
  bool trace = false;
};

// Element of G1, G2 or GT under one of two backends.
//
// kMock stores the discrete logarithm relative to a fixed generator of each
// group, so the group law is addition mod p, exponentiation is
// multiplication and the pairing multiplies logarithms. kCurve stores a
// BLS12-381 point (G1, G2) or an Fp12 element of the r-torsion (GT).
class GroupElem {
 public:
  // Mock G1 identity; placeholder for aggregates that are filled later.
  GroupElem() : GroupElem(Backend::kMock, Group::kG1, Scalar()) {}

  static GroupElem Identity(Backend backend, Group group);
  static GroupElem Generator(Backend backend, Group group);

  Backend backend() const { return backend_; }
  Group group() const { return group_; }
  bool IsIdentity() const;

  GroupElem Pow(const Scalar& e) const;
  GroupElem Inverse() const;

  friend GroupElem operator*(const GroupElem& a, const GroupElem& b);
  friend GroupElem operator/(const GroupElem& a, const GroupElem& b);
  GroupElem& operator*=(const GroupElem& o) { return *this = *this * o; }
  friend bool operator==(const GroupElem& a, const GroupElem& b);

 private:
  using Payload = std::variant<Scalar, blst_p1, blst_p2, blst_fp12>;

  GroupElem(Backend backend, Group group, Payload payload)
      : backend_(backend), group_(group), payload_(payload) {}

  friend GroupElem Pair(const GroupElem& a, const GroupElem& b);
  friend Scalar Dlog(const GroupElem& a);
  friend std::vector<std::uint8_t> Serialize(const GroupElem& a);
  friend GroupElem Deserialize(std::span<const std::uint8_t> bytes,
                               Backend backend, Group group);

  Backend backend_;
  Group group_;
  Payload payload_;
};

inline GroupElem Pow(const GroupElem& a, const Scalar& e) { return a.Pow(e); }
inline GroupElem Inverse(const GroupElem& a) { return a.Inverse(); }

// e: G1 x G2 -> GT.
GroupElem Pair(const GroupElem& a, const GroupElem& b);

// Mock backend only; throws kRequiresMockBackend for curve elements.
Scalar Dlog(const GroupElem& a);

// Mock: one tag byte followed by the 32-byte big-endian exponent.
// Curve: compressed G1 (48 bytes) / G2 (96 bytes) as in the ZCash
// BLS12-381 serialization; GT as twelve 48-byte big-endian Fp coefficients.
std::vector<std::uint8_t> Serialize(const GroupElem& a);
GroupElem Deserialize(std::span<const std::uint8_t> bytes, Backend backend,
                      Group group);
std::size_t EncodedSize(Backend backend, Group group);

}  // namespace rsibe

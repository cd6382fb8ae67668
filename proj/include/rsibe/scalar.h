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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "blst.h"

namespace rsibe {

// Element of Z_p where p is the prime order of the BLS12-381 groups. Both
// group backends share this field, so a seed drives identical exponent
// streams regardless of backend.
class Scalar {
 public:
  static constexpr std::size_t kBytes = 32;
  static constexpr std::size_t kBits = 255;

  Scalar();

  static Scalar FromUint64(std::uint64_t v);
  static Scalar FromInt64(std::int64_t v);
  // Canonical big-endian decoding; nullopt when the value is >= p.
  static std::optional<Scalar> FromBytes(std::span<const std::uint8_t> bytes);

  std::array<std::uint8_t, kBytes> ToBytes() const;  // big-endian
  std::array<std::uint8_t, kBytes> ToLittleEndian() const;
  std::string ToHex() const;

  bool IsZero() const;
  Scalar Inverse() const;  // throws kInvalidParameter on zero

  // Smallest-magnitude signed representative when it fits in an int64.
  std::optional<std::int64_t> ToSmallInt() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  blst_fr v_;
};

}  // namespace rsibe

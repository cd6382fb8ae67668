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

#include "rsibe/scalar.h"

#include <cstring>
#include <limits>

#include "rsibe/error.h"

namespace rsibe {

Scalar::Scalar() { std::memset(&v_, 0, sizeof(v_)); }

Scalar Scalar::FromUint64(std::uint64_t v) {
  const std::uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar out;
  blst_fr_from_uint64(&out.v_, limbs);
  return out;
}

Scalar Scalar::FromInt64(std::int64_t v) {
  if (v >= 0) return FromUint64(static_cast<std::uint64_t>(v));
  // -(v+1) is representable for every negative int64.
  return -(FromUint64(static_cast<std::uint64_t>(-(v + 1))) + FromUint64(1));
}

std::optional<Scalar> Scalar::FromBytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kBytes) return std::nullopt;
  blst_scalar s;
  blst_scalar_from_bendian(&s, bytes.data());
  if (!blst_scalar_fr_check(&s)) return std::nullopt;
  Scalar out;
  blst_fr_from_scalar(&out.v_, &s);
  return out;
}

std::array<std::uint8_t, Scalar::kBytes> Scalar::ToBytes() const {
  blst_scalar s;
  blst_scalar_from_fr(&s, &v_);
  std::array<std::uint8_t, kBytes> out;
  blst_bendian_from_scalar(out.data(), &s);
  return out;
}

std::array<std::uint8_t, Scalar::kBytes> Scalar::ToLittleEndian() const {
  blst_scalar s;
  blst_scalar_from_fr(&s, &v_);
  std::array<std::uint8_t, kBytes> out;
  blst_lendian_from_scalar(out.data(), &s);
  return out;
}

std::string Scalar::ToHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * kBytes);
  for (std::uint8_t b : ToBytes()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

bool Scalar::IsZero() const {
  static const Scalar kZero;
  return *this == kZero;
}

Scalar Scalar::Inverse() const {
  if (IsZero()) Throw(ErrorCode::kInvalidParameter, "inverse of zero scalar");
  Scalar out;
  blst_fr_inverse(&out.v_, &v_);
  return out;
}

std::optional<std::int64_t> Scalar::ToSmallInt() const {
  auto fits = [](const std::array<std::uint8_t, kBytes>& be)
      -> std::optional<std::uint64_t> {
    for (std::size_t i = 0; i + 8 < kBytes; ++i) {
      if (be[i] != 0) return std::nullopt;
    }
    std::uint64_t v = 0;
    for (std::size_t i = kBytes - 8; i < kBytes; ++i) v = (v << 8) | be[i];
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
      return std::nullopt;
    return v;
  };
  if (auto pos = fits(ToBytes())) return static_cast<std::int64_t>(*pos);
  if (auto neg = fits((-*this).ToBytes())) return -static_cast<std::int64_t>(*neg);
  return std::nullopt;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar out;
  blst_fr_add(&out.v_, &a.v_, &b.v_);
  return out;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar out;
  blst_fr_sub(&out.v_, &a.v_, &b.v_);
  return out;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  blst_fr_mul(&out.v_, &a.v_, &b.v_);
  return out;
}

Scalar operator-(const Scalar& a) {
  Scalar out;
  blst_fr_cneg(&out.v_, &a.v_, true);
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  return std::memcmp(&a.v_, &b.v_, sizeof(blst_fr)) == 0;
}

}  // namespace rsibe

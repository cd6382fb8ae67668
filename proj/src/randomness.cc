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

#include "rsibe/randomness.h"

#include <array>

namespace rsibe {

namespace {

std::seed_seq MakeSeedSeq(std::uint64_t seed, std::string_view domain) {
  std::vector<std::uint32_t> words = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(domain.size())};
  for (char c : domain) words.push_back(static_cast<unsigned char>(c));
  return std::seed_seq(words.begin(), words.end());
}

}  // namespace

Randomness::Randomness(std::uint64_t seed, std::string_view domain, bool trace)
    : tracing_(trace) {
  auto seq = MakeSeedSeq(seed, domain);
  engine_.seed(seq);
}

std::uint64_t Randomness::NextWord() { return engine_(); }

Scalar Randomness::SampleNonzero(std::string_view label) {
  // Rejection sampling on 255-bit candidates; p > 2^254 so each round
  // succeeds with probability > 1/2.
  for (;;) {
    std::array<std::uint8_t, Scalar::kBytes> be{};
    for (std::size_t w = 0; w < 4; ++w) {
      std::uint64_t word = engine_();
      for (std::size_t k = 0; k < 8; ++k) {
        be[8 * w + k] = static_cast<std::uint8_t>(word >> (56 - 8 * k));
      }
    }
    be[0] &= 0x7f;
    auto s = Scalar::FromBytes(be);
    if (!s || s->IsZero()) continue;
    if (tracing_) trace_.push_back({std::string(label), *s});
    return *s;
  }
}

std::optional<Scalar> Randomness::Last(std::string_view label) const {
  for (auto it = trace_.rbegin(); it != trace_.rend(); ++it) {
    if (it->label == label) return it->value;
  }
  return std::nullopt;
}

}  // namespace rsibe

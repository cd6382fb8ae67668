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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rsibe/scalar.h"

namespace rsibe {

struct TraceEntry {
  std::string label;
  Scalar value;
};

// Seeded, labelled source of scalars. Every draw site names itself
// ("encrypt.s", "update_ct.s_v[011]", ...) so white-box tests can look up
// the exponents a run used. Not a CSPRNG: the point is reproducibility.
class Randomness {
 public:
  explicit Randomness(std::uint64_t seed, std::string_view domain = {},
                      bool trace = false);

  // Uniform over [1, p-1].
  Scalar SampleNonzero(std::string_view label);
  std::uint64_t NextWord();

  bool tracing() const { return tracing_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  // Most recent draw recorded under `label`.
  std::optional<Scalar> Last(std::string_view label) const;
  void ClearTrace() { trace_.clear(); }

 private:
  std::mt19937_64 engine_;
  bool tracing_;
  std::vector<TraceEntry> trace_;
};

}  // namespace rsibe

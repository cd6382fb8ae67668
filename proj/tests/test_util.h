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

#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "rsibe/codec.h"
#include "rsibe/error.h"
#include "rsibe/scalar.h"

namespace rsibe {

inline void PrintTo(ErrorCode code, std::ostream* os) { *os << ErrorCodeName(code); }

namespace testing_util {

// The error code thrown by `f`, or nullopt when it returns normally.
template <class F>
std::optional<ErrorCode> CaughtCode(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline Scalar ScalarHex(std::string_view hex) {
  std::vector<std::uint8_t> bytes = FromHex(hex);
  bytes.insert(bytes.begin(), Scalar::kBytes - bytes.size(), 0);
  return *Scalar::FromBytes(bytes);
}

inline Scalar S(std::int64_t v) { return Scalar::FromInt64(v); }

}  // namespace testing_util
}  // namespace rsibe

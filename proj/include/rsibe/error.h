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

#include <stdexcept>
#include <string>

namespace rsibe {

enum class ErrorCode {
  kGroupMismatch,
  kBackendMismatch,
  kDecodeError,
  kRequiresMockBackend,
  kInvalidNode,
  kInvalidTime,
  kInvalidIdentity,
  kInvalidParameter,
  kCapacityExceeded,
  kAlreadyAssigned,
  kUnknownIdentity,
  kNoAncestor,
  kRevoked,
  kInvalidUpdate,
  kRejected,
  kIdentityMismatch,
  kVariantMismatch,
  kInvalidTarget,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& what);

}  // namespace rsibe

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

#include "rsibe/error.h"

namespace rsibe {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGroupMismatch: return "GroupMismatch";
    case ErrorCode::kBackendMismatch: return "BackendMismatch";
    case ErrorCode::kDecodeError: return "DecodeError";
    case ErrorCode::kRequiresMockBackend: return "RequiresMockBackend";
    case ErrorCode::kInvalidNode: return "InvalidNode";
    case ErrorCode::kInvalidTime: return "InvalidTime";
    case ErrorCode::kInvalidIdentity: return "InvalidIdentity";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kAlreadyAssigned: return "AlreadyAssigned";
    case ErrorCode::kUnknownIdentity: return "UnknownIdentity";
    case ErrorCode::kNoAncestor: return "NoAncestor";
    case ErrorCode::kRevoked: return "Revoked";
    case ErrorCode::kInvalidUpdate: return "InvalidUpdate";
    case ErrorCode::kRejected: return "Rejected";
    case ErrorCode::kIdentityMismatch: return "IdentityMismatch";
    case ErrorCode::kVariantMismatch: return "VariantMismatch";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
  }
  return "Unknown";
}

void Throw(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace rsibe

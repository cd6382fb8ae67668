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

#include <string>
#include <utility>

#include "json.hpp"
#include "rsibe/analysis.h"
#include "rsibe/scheme.h"

namespace rsibe {

using Json = nlohmann::ordered_json;

// Bump when a file layout changes incompatibly.
inline constexpr int kSchemaVersion = 1;

std::string ToHex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> FromHex(std::string_view hex);  // throws kDecodeError

std::string ElemHex(const GroupElem& e);
GroupElem ElemFromHex(const Json& j, Backend backend, Group group);

// 16 hex digits (FNV-1a over the canonical encoding) naming a GT message.
std::string MessageHandle(const GroupElem& m);

// Every artifact carries {"schema", "type", "backend", ...}. Loading checks
// the type tag, the backend against the public parameters, and the
// invariants of the contained object.
Json ToJson(const PublicParams& pp);
PublicParams PublicParamsFromJson(const Json& j);

Json ToJson(const MasterKey& mk, const PublicParams& pp);
MasterKey MasterKeyFromJson(const Json& j, const PublicParams& pp);

Json StateToJson(const RevocationTree& st, const RevocationList& rl,
                 const PublicParams& pp);
std::pair<RevocationTree, RevocationList> StateFromJson(const Json& j,
                                                        const PublicParams& pp);

Json ToJson(const PrivateKey& sk, const PublicParams& pp);
PrivateKey PrivateKeyFromJson(const Json& j, const PublicParams& pp);

Json ToJson(const KeyUpdate& ku, const PublicParams& pp);
KeyUpdate KeyUpdateFromJson(const Json& j, const PublicParams& pp);

Json ToJson(const DecryptionKey& dk, const PublicParams& pp);
DecryptionKey DecryptionKeyFromJson(const Json& j, const PublicParams& pp);

Json ToJson(const Ciphertext& ct, const PublicParams& pp);
Ciphertext CiphertextFromJson(const Json& j, const PublicParams& pp);

Json TraceToJson(const Randomness& rng);

Json ToJson(const FailureReport& report);
Json ToJson(const AttackReport& report);
Json ToJson(const SizeCensus& census);

}  // namespace rsibe

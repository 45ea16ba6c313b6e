// Copyright 2026 The fwconform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FWCONFORM_DIGEST_H_
#define FWCONFORM_DIGEST_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace fwconform {

// SHA-256 of `bytes`, lower-case hex. Used as the integrity baseline.
std::string ContentDigest(std::string_view bytes);

// Raw 32-byte SHA-256.
std::string Sha256(std::string_view bytes);

std::string HexEncode(std::string_view bytes);
absl::StatusOr<std::string> HexDecode(std::string_view hex);

}  // namespace fwconform

#endif  // FWCONFORM_DIGEST_H_

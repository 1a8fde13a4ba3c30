// Copyright 2026 The VPE Authors
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
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vpe/registry.hpp"

namespace vpe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitWorkerUnreachable = 3;
inline constexpr int kExitInternal = 4;
inline constexpr int kExitBadImage = 5;

int exit_code_for(const std::exception& e);

/// JSON array with one element per parameter of `signature`:
/// I64 -> number, Bytes -> string, I32Vec -> [ints], matrices -> [[ints]],
/// Q15 complex vector -> flat [re, im, ...]. Throws Error(InvalidConfig).
std::vector<Value> parse_args_json(const Signature& signature, const std::string& text);

/// Square integer matrix from [[...], ...].
I32Matrix parse_matrix_json(const std::string& text);

/// `explicit_seed`, else $VPE_SEED, else 1. Throws Error(InvalidConfig) on a
/// malformed $VPE_SEED.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& explicit_seed);

/// Existing paths are returned unchanged. A bare file name is also looked
/// up in $VPE_PROFILE_DIR and the bundled profiles directory.
std::filesystem::path resolve_profile(const std::filesystem::path& path);

}  // namespace vpe::cli

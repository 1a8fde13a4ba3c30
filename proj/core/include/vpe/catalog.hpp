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
#include <span>
#include <string>
#include <string_view>

#include "vpe/registry.hpp"

namespace vpe {

/// A built-in benchmark kernel as seen by the registry and the worker.
struct CatalogEntry {
  std::string name;
  /// Stable id used on the wire.
  std::uint32_t wire_id = 0;
  Signature signature;
  Implementation local;
  ArgumentCheck check;
};

/// complement(1), convolution(2), dot(3), matmul(4), pattern(5), fft(6).
std::span<const CatalogEntry> builtin_kernels();

/// Throws Error(UnknownKernel) for an unknown name.
const CatalogEntry& builtin_kernel(std::string_view name);
const CatalogEntry* builtin_kernel_by_wire_id(std::uint32_t wire_id);

}  // namespace vpe

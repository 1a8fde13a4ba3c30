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

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace vpe {

struct KernelId {
  std::uint32_t value = 0;

  friend auto operator<=>(const KernelId&, const KernelId&) = default;
};

struct TargetId {
  std::string name;

  friend auto operator<=>(const TargetId&, const TargetId&) = default;
  friend bool operator==(const TargetId&, const TargetId&) = default;
};

inline const TargetId kLocalTarget{"local"};
inline const TargetId kSimTarget{"sim"};
inline const TargetId kWorkerTarget{"worker"};

}  // namespace vpe

template <>
struct std::hash<vpe::KernelId> {
  std::size_t operator()(const vpe::KernelId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

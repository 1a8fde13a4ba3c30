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

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vpe/error.hpp"
#include "vpe/ids.hpp"
#include "vpe/profiler.hpp"
#include "vpe/value.hpp"

namespace vpe {

using Implementation = std::function<Value(Args)>;

/// Shape checks beyond kinds (e.g. equal vector lengths). Throws
/// Error(ArgumentMismatch) on rejection.
using ArgumentCheck = std::function<void(Args)>;

struct Signature {
  std::vector<ValueKind> params;
  ValueKind result = ValueKind::I64;
};

struct KernelDescriptor {
  KernelId id;
  std::string name;
  Signature signature;
  /// Targets in registration order; the local target is always present.
  std::vector<TargetId> targets;

  bool has_target(const TargetId& target) const;
  /// Every target except the local one, in registration order.
  std::vector<TargetId> alternates() const;
};

struct Binding {
  KernelId kernel;
  TargetId target;
  std::uint64_t version = 0;
};

struct InvocationRecord {
  KernelId kernel;
  TargetId target;
  std::uint64_t binding_version = 0;
  std::int64_t duration_ns = 0;
  std::uint64_t seq = 0;
  ClockKind clock = ClockKind::Real;
};

/// Callback fired when a non-local target throws; the registry has already
/// reverted the binding to local when it runs.
using TargetFailureHook = std::function<void(KernelId, const TargetId&, const Error&)>;

struct InvocationContext {
  const MeasurementSource* clock = nullptr;
  Profiler* profiler = nullptr;
  TargetFailureHook on_target_failure;
};

/// Registered kernels plus the caller indirection every invocation goes
/// through. Each kernel's binding is one atomic word (version, target
/// index), so an invocation observes either the old or the new binding.
class Registry {
 public:
  Registry() = default;
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  /// `impls` must contain kLocalTarget. An empty `check` accepts any
  /// arguments of the right kinds.
  KernelId register_kernel(std::string name, Signature signature,
                           std::vector<std::pair<TargetId, Implementation>> impls,
                           ArgumentCheck check = {});

  std::pair<Value, InvocationRecord> invoke(KernelId kernel, Args args,
                                            const InvocationContext& ctx) const;

  Binding rebind(KernelId kernel, const TargetId& target);
  Binding current_binding(KernelId kernel) const;

  const KernelDescriptor& descriptor(KernelId kernel) const;
  std::optional<KernelId> find(std::string_view name) const;
  std::vector<KernelId> kernels() const;
  std::string name_of(KernelId kernel) const;

  /// Runs the kind and shape checks invoke() performs before dispatch.
  void check_arguments(KernelId kernel, Args args) const;

 private:
  struct Entry {
    KernelDescriptor descriptor;
    std::vector<Implementation> impls;
    ArgumentCheck check;
    // version << 16 | target index
    std::atomic<std::uint64_t> binding{0};
  };

  static constexpr std::uint64_t kIndexBits = 16;
  static constexpr std::uint64_t kIndexMask = (1ULL << kIndexBits) - 1;

  Entry& entry(KernelId kernel) const;
  static Binding unpack(const Entry& e, std::uint64_t word);
  bool revert_if_current(Entry& e, std::uint64_t observed) const;

  mutable std::shared_mutex mu_;
  std::vector<std::unique_ptr<Entry>> entries_;
  std::map<std::string, KernelId, std::less<>> by_name_;
  mutable std::atomic<std::uint64_t> next_seq_{0};
};

}  // namespace vpe

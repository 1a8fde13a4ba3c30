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

#include "vpe/registry.hpp"

#include <algorithm>
#include <mutex>

namespace vpe {

namespace {

const SteadyClockSource& default_clock() {
  static const SteadyClockSource clock;
  return clock;
}

}  // namespace

bool KernelDescriptor::has_target(const TargetId& target) const {
  return std::find(targets.begin(), targets.end(), target) != targets.end();
}

std::vector<TargetId> KernelDescriptor::alternates() const {
  std::vector<TargetId> out;
  for (const TargetId& t : targets) {
    if (t != kLocalTarget) out.push_back(t);
  }
  return out;
}

KernelId Registry::register_kernel(std::string name, Signature signature,
                                   std::vector<std::pair<TargetId, Implementation>> impls,
                                   ArgumentCheck check) {
  if (name.empty()) throw Error(Errc::InvalidSignature, "kernel name is empty");
  // Every ValueKind code is valid by construction; only the enum range needs checking.
  auto valid_kind = [](ValueKind k) {
    return static_cast<std::uint8_t>(k) >= 1 && static_cast<std::uint8_t>(k) <= 6;
  };
  if (!valid_kind(signature.result) ||
      !std::all_of(signature.params.begin(), signature.params.end(), valid_kind)) {
    throw Error(Errc::InvalidSignature, "kernel '" + name + "' has an unknown value kind");
  }
  auto local = std::find_if(impls.begin(), impls.end(),
                            [](const auto& p) { return p.first == kLocalTarget; });
  if (local == impls.end()) {
    throw Error(Errc::MissingImplementation, "kernel '" + name + "' has no local implementation");
  }
  if (impls.size() > kIndexMask) {
    throw Error(Errc::InvalidSignature, "too many targets for kernel '" + name + "'");
  }
  // Local goes first so index 0 is always the fallback binding.
  std::rotate(impls.begin(), local, local + 1);

  auto e = std::make_unique<Entry>();
  e->descriptor.name = name;
  e->descriptor.signature = std::move(signature);
  e->check = std::move(check);
  for (auto& [target, impl] : impls) {
    if (!impl) throw Error(Errc::MissingImplementation, "null implementation for " + target.name);
    if (e->descriptor.has_target(target)) {
      throw Error(Errc::InvalidSignature, "target '" + target.name + "' listed twice");
    }
    e->descriptor.targets.push_back(target);
    e->impls.push_back(std::move(impl));
  }

  std::unique_lock lock(mu_);
  if (by_name_.contains(name)) {
    throw Error(Errc::DuplicateKernel, "kernel '" + name + "' already registered");
  }
  const KernelId id{static_cast<std::uint32_t>(entries_.size() + 1)};
  e->descriptor.id = id;
  by_name_.emplace(std::move(name), id);
  entries_.push_back(std::move(e));
  return id;
}

Registry::Entry& Registry::entry(KernelId kernel) const {
  std::shared_lock lock(mu_);
  if (kernel.value == 0 || kernel.value > entries_.size()) {
    throw Error(Errc::UnknownKernel, "kernel id " + std::to_string(kernel.value));
  }
  return *entries_[kernel.value - 1];
}

Binding Registry::unpack(const Entry& e, std::uint64_t word) {
  return Binding{e.descriptor.id, e.descriptor.targets[word & kIndexMask], word >> kIndexBits};
}

void Registry::check_arguments(KernelId kernel, Args args) const {
  const Entry& e = entry(kernel);
  const auto& params = e.descriptor.signature.params;
  if (args.size() != params.size()) {
    throw Error(Errc::ArgumentMismatch, e.descriptor.name + " expects " +
                                            std::to_string(params.size()) + " arguments, got " +
                                            std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (kind_of(args[i]) != params[i]) {
      throw Error(Errc::ArgumentMismatch,
                  e.descriptor.name + " argument " + std::to_string(i) + " is " +
                      std::string(to_string(kind_of(args[i]))) + ", expected " +
                      std::string(to_string(params[i])));
    }
    if (!is_well_formed(args[i])) {
      throw Error(Errc::ArgumentMismatch,
                  e.descriptor.name + " argument " + std::to_string(i) + " is malformed");
    }
  }
  if (e.check) e.check(args);
}

bool Registry::revert_if_current(Entry& e, std::uint64_t observed) const {
  const std::uint64_t reverted = ((observed >> kIndexBits) + 1) << kIndexBits;
  return e.binding.compare_exchange_strong(observed, reverted, std::memory_order_acq_rel);
}

std::pair<Value, InvocationRecord> Registry::invoke(KernelId kernel, Args args,
                                                    const InvocationContext& ctx) const {
  check_arguments(kernel, args);
  Entry& e = entry(kernel);
  const MeasurementSource& clock = ctx.clock ? *ctx.clock : default_clock();

  const std::uint64_t word = e.binding.load(std::memory_order_acquire);
  const std::size_t index = word & kIndexMask;
  const std::int64_t start = clock.now_ns();
  Value result;
  try {
    result = e.impls[index](args);
  } catch (const Error& err) {
    if (index != 0) {
      revert_if_current(e, word);
      if (ctx.on_target_failure) ctx.on_target_failure(kernel, e.descriptor.targets[index], err);
    }
    throw;
  } catch (const std::exception& ex) {
    Error err(Errc::ExecutionFailed, e.descriptor.name + ": " + ex.what());
    if (index != 0) {
      revert_if_current(e, word);
      if (ctx.on_target_failure) ctx.on_target_failure(kernel, e.descriptor.targets[index], err);
    }
    throw err;
  }
  const std::int64_t stop = clock.now_ns();

  if (kind_of(result) != e.descriptor.signature.result) {
    throw Error(Errc::InvalidState, e.descriptor.name + " returned " +
                                        std::string(to_string(kind_of(result))));
  }

  InvocationRecord record;
  record.kernel = kernel;
  record.target = e.descriptor.targets[index];
  record.binding_version = word >> kIndexBits;
  record.duration_ns = std::max<std::int64_t>(0, stop - start);
  record.seq = next_seq_.fetch_add(1, std::memory_order_relaxed);
  record.clock = clock.kind();
  if (ctx.profiler) {
    ctx.profiler->record(TimingSample::make(kernel, record.target, record.duration_ns,
                                            record.seq, record.clock));
  }
  return {std::move(result), std::move(record)};
}

Binding Registry::rebind(KernelId kernel, const TargetId& target) {
  Entry& e = entry(kernel);
  const auto& targets = e.descriptor.targets;
  auto it = std::find(targets.begin(), targets.end(), target);
  if (it == targets.end()) {
    throw Error(Errc::MissingImplementation,
                e.descriptor.name + " has no implementation for target '" + target.name + "'");
  }
  const std::uint64_t index = static_cast<std::uint64_t>(it - targets.begin());
  std::uint64_t observed = e.binding.load(std::memory_order_acquire);
  std::uint64_t next = 0;
  do {
    next = (((observed >> kIndexBits) + 1) << kIndexBits) | index;
  } while (!e.binding.compare_exchange_weak(observed, next, std::memory_order_acq_rel));
  return unpack(e, next);
}

Binding Registry::current_binding(KernelId kernel) const {
  const Entry& e = entry(kernel);
  return unpack(e, e.binding.load(std::memory_order_acquire));
}

const KernelDescriptor& Registry::descriptor(KernelId kernel) const {
  return entry(kernel).descriptor;
}

std::optional<KernelId> Registry::find(std::string_view name) const {
  std::shared_lock lock(mu_);
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<KernelId> Registry::kernels() const {
  std::shared_lock lock(mu_);
  std::vector<KernelId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e->descriptor.id);
  return out;
}

std::string Registry::name_of(KernelId kernel) const { return descriptor(kernel).name; }

}  // namespace vpe

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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vpe/policy.hpp"
#include "vpe/profiler.hpp"
#include "vpe/registry.hpp"

namespace vpe {

/// One line of the decision trace.
struct TraceEntry {
  std::uint64_t round = 0;
  std::string kernel;
  ActionKind action = ActionKind::None;
  TargetId target;
  std::optional<double> local_mean_ms;
  std::optional<double> remote_mean_ms;
  std::optional<double> speedup;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Drives the policy against a live registry and profiler: owns the
/// per-kernel state machine, applies actions through Registry::rebind and
/// records the decision trace. Runs on one control thread; the failure hook
/// is the only entry point safe to call from invocation threads.
class Controller {
 public:
  Controller(Registry& registry, Profiler& profiler, PolicyConfig config);

  const PolicyConfig& config() const { return config_; }

  /// While disabled, on_invocation() counts calls but never evaluates.
  void set_enabled(bool enabled) { enabled_ = enabled; }
  bool enabled() const { return enabled_; }

  /// Call once per completed invocation; runs step() every eval_period calls.
  void on_invocation();

  /// One evaluation round: handle reported target failures, expire
  /// cooldowns, evaluate and apply. Returns the applied actions.
  std::vector<Action> step();

  /// Applies one action. Throws Error(InvalidState) when the action is not
  /// valid for the kernel's current state.
  void apply(const Action& action);

  /// Hook for InvocationContext::on_target_failure.
  TargetFailureHook failure_hook();

  const std::vector<TraceEntry>& trace() const { return trace_; }
  const StateMap& states() const { return states_; }
  const PhaseState& state(KernelId kernel);
  std::uint64_t round() const { return round_; }
  std::uint64_t rebinds(KernelId kernel) const;

  /// Current per-kernel view of registry plus profiler, sorted by id.
  std::vector<KernelView> snapshot();

 private:
  struct Failure {
    KernelId kernel;
    TargetId target;
  };

  void sync_kernels();
  void handle_failures();
  void log(const Action& action);
  void enter_cooldown(KernelId kernel, const TargetId& target);

  Registry& registry_;
  Profiler& profiler_;
  PolicyConfig config_;
  bool enabled_ = true;
  std::uint64_t invocations_ = 0;
  std::uint64_t round_ = 0;
  StateMap states_;
  std::map<KernelId, std::uint64_t> rebinds_;
  std::vector<TraceEntry> trace_;

  struct FailureQueue {
    std::mutex mu;
    std::vector<Failure> items;
  };
  std::shared_ptr<FailureQueue> failures_ = std::make_shared<FailureQueue>();
};

}  // namespace vpe

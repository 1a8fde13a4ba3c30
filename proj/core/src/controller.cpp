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

#include "vpe/controller.hpp"

#include "vpe/error.hpp"

namespace vpe {

Controller::Controller(Registry& registry, Profiler& profiler, PolicyConfig config)
    : registry_(registry), profiler_(profiler), config_(config) {
  config_.validate();
  sync_kernels();
}

void Controller::sync_kernels() {
  for (KernelId id : registry_.kernels()) states_.try_emplace(id, phase::Baseline{});
}

const PhaseState& Controller::state(KernelId kernel) {
  sync_kernels();
  auto it = states_.find(kernel);
  if (it == states_.end()) {
    throw Error(Errc::UnknownKernel, "kernel id " + std::to_string(kernel.value));
  }
  return it->second;
}

std::uint64_t Controller::rebinds(KernelId kernel) const {
  auto it = rebinds_.find(kernel);
  return it == rebinds_.end() ? 0 : it->second;
}

void Controller::on_invocation() {
  ++invocations_;
  if (enabled_ && invocations_ % config_.eval_period == 0) step();
}

TargetFailureHook Controller::failure_hook() {
  std::weak_ptr<FailureQueue> queue = failures_;
  return [queue](KernelId kernel, const TargetId& target, const Error&) {
    if (auto q = queue.lock()) {
      std::lock_guard lock(q->mu);
      q->items.push_back({kernel, target});
    }
  };
}

std::vector<KernelView> Controller::snapshot() {
  sync_kernels();
  std::vector<KernelView> views;
  for (KernelId id : registry_.kernels()) {
    const KernelDescriptor& d = registry_.descriptor(id);
    KernelView v;
    v.id = id;
    v.alternates = d.alternates();
    v.local_total = profiler_.stats(id, kLocalTarget);
    v.local_episode = profiler_.episode_stats(id, kLocalTarget);
    for (const TargetId& t : v.alternates) v.remote_episode[t] = profiler_.episode_stats(id, t);
    views.push_back(std::move(v));
  }
  return views;
}

void Controller::log(const Action& action) {
  TraceEntry e;
  e.round = round_;
  e.kernel = registry_.name_of(action.kernel);
  e.action = action.kind;
  e.target = action.target;
  e.local_mean_ms = action.local_mean_ms;
  e.remote_mean_ms = action.remote_mean_ms;
  e.speedup = action.speedup;
  trace_.push_back(std::move(e));
}

void Controller::enter_cooldown(KernelId kernel, const TargetId& target) {
  const KernelStats local = profiler_.episode_stats(kernel, kLocalTarget);
  std::optional<RevertMemo> memo;
  if (local.count > 0) memo = RevertMemo{target, local.mean_ms()};
  profiler_.begin_episode(kernel, kLocalTarget);
  states_[kernel] = phase::Cooldown{round_ + config_.cooldown_rounds, memo};
}

void Controller::handle_failures() {
  std::vector<Failure> pending;
  {
    std::lock_guard lock(failures_->mu);
    pending.swap(failures_->items);
  }
  for (const Failure& f : pending) {
    const PhaseState& st = state(f.kernel);
    const TargetId* bound = nullptr;
    if (const auto* p = std::get_if<phase::Probing>(&st)) bound = &p->target;
    if (const auto* c = std::get_if<phase::Committed>(&st)) bound = &c->target;
    if (bound == nullptr || *bound != f.target) continue;
    // The registry already swapped the binding back to local.
    ++rebinds_[f.kernel];
    Action a;
    a.kind = ActionKind::Revert;
    a.kernel = f.kernel;
    a.target = f.target;
    const KernelStats local = profiler_.episode_stats(f.kernel, kLocalTarget);
    if (local.count > 0) a.local_mean_ms = local.mean_ms();
    log(a);
    enter_cooldown(f.kernel, f.target);
  }
}

std::vector<Action> Controller::step() {
  ++round_;
  sync_kernels();
  handle_failures();
  expire_cooldowns(states_, round_);
  const std::vector<KernelView> views = snapshot();
  std::vector<Action> actions = evaluate(views, states_, config_, round_);
  for (const Action& a : actions) apply(a);
  return actions;
}

void Controller::apply(const Action& action) {
  const PhaseState& st = state(action.kernel);
  switch (action.kind) {
    case ActionKind::None:
      return;
    case ActionKind::Offload: {
      if (!std::holds_alternative<phase::Baseline>(st)) {
        throw Error(Errc::InvalidState, "offload requires baseline state, kernel is " +
                                            std::string(phase_name(st)));
      }
      try {
        registry_.rebind(action.kernel, action.target);
      } catch (const Error&) {
        log(action);
        states_[action.kernel] = phase::Cooldown{round_ + config_.cooldown_rounds, std::nullopt};
        return;
      }
      ++rebinds_[action.kernel];
      profiler_.begin_episode(action.kernel, action.target);
      states_[action.kernel] = phase::Probing{action.target, round_};
      log(action);
      return;
    }
    case ActionKind::Commit: {
      const auto* p = std::get_if<phase::Probing>(&st);
      if (p == nullptr) {
        throw Error(Errc::InvalidState, "commit requires probing state, kernel is " +
                                            std::string(phase_name(st)));
      }
      states_[action.kernel] = phase::Committed{p->target};
      log(action);
      return;
    }
    case ActionKind::Revert: {
      if (!std::holds_alternative<phase::Probing>(st) &&
          !std::holds_alternative<phase::Committed>(st)) {
        throw Error(Errc::InvalidState, "revert requires probing or committed state, kernel is " +
                                            std::string(phase_name(st)));
      }
      log(action);
      registry_.rebind(action.kernel, kLocalTarget);
      ++rebinds_[action.kernel];
      enter_cooldown(action.kernel, action.target);
      return;
    }
  }
}

}  // namespace vpe

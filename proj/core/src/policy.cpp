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

#include "vpe/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vpe/error.hpp"

namespace vpe {

void PolicyConfig::validate() const {
  if (min_samples < 2) throw Error(Errc::InvalidConfig, "min_samples must be >= 2");
  if (!(improve_margin >= 0.0 && improve_margin < 1.0)) {
    throw Error(Errc::InvalidConfig, "improve_margin must be in [0, 1)");
  }
  if (eval_period < 1) throw Error(Errc::InvalidConfig, "eval_period must be >= 1");
  if (max_concurrent_probes < 1) {
    throw Error(Errc::InvalidConfig, "max_concurrent_probes must be >= 1");
  }
}

std::string_view phase_name(const PhaseState& state) {
  switch (state.index()) {
    case 0: return "baseline";
    case 1: return "probing";
    case 2: return "committed";
    default: return "cooldown";
  }
}

std::string_view to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::None: return "none";
    case ActionKind::Offload: return "offload";
    case ActionKind::Commit: return "commit";
    case ActionKind::Revert: return "revert";
  }
  return "none";
}

double speedup(double local_mean, double remote_mean) {
  if (!(local_mean > 0.0) || !(remote_mean > 0.0)) {
    throw Error(Errc::InvalidConfig, "speedup needs positive means");
  }
  return local_mean / remote_mean;
}

namespace {

const PhaseState& state_of(const StateMap& states, KernelId id) {
  auto it = states.find(id);
  if (it == states.end()) {
    throw Error(Errc::InvalidState, "no policy state for kernel " + std::to_string(id.value));
  }
  return it->second;
}

// A reverted target stays excluded while the local cost looks unchanged.
bool memo_blocks(const RevertMemo& memo, const TargetId& target, const KernelView& view,
                 const PolicyConfig& config) {
  if (memo.target != target) return false;
  if (view.local_episode.count < config.min_samples) return true;
  const double drift = std::abs(view.local_episode.mean_ms() - memo.local_mean_ms);
  return drift <= config.improve_margin * memo.local_mean_ms;
}

const KernelStats* remote_stats(const KernelView& view, const TargetId& target) {
  auto it = view.remote_episode.find(target);
  return it == view.remote_episode.end() ? nullptr : &it->second;
}

// Zero-duration means come from degenerate cost models; keep them total.
double observed_speedup(double local_ns, double remote_ns) {
  if (remote_ns <= 0.0) return local_ns > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  if (local_ns <= 0.0) return 0.0;
  return speedup(local_ns, remote_ns);
}

}  // namespace

std::optional<std::pair<KernelId, TargetId>> select_candidate(std::span<const KernelView> views,
                                                             const StateMap& states,
                                                             const PolicyConfig& config,
                                                             std::span<const KernelId> skip) {
  std::vector<const KernelView*> order;
  for (const KernelView& v : views) order.push_back(&v);
  std::sort(order.begin(), order.end(), [](const KernelView* a, const KernelView* b) {
    if (a->local_total.total_ns != b->local_total.total_ns) {
      return a->local_total.total_ns > b->local_total.total_ns;
    }
    return a->id < b->id;
  });

  for (const KernelView* v : order) {
    if (std::find(skip.begin(), skip.end(), v->id) != skip.end()) continue;
    const auto* baseline = std::get_if<phase::Baseline>(&state_of(states, v->id));
    if (baseline == nullptr) continue;
    if (v->local_total.count < config.min_samples) continue;
    for (const TargetId& target : v->alternates) {
      if (baseline->memo && memo_blocks(*baseline->memo, target, *v, config)) continue;
      return std::make_pair(v->id, target);
    }
  }
  return std::nullopt;
}

void expire_cooldowns(StateMap& states, std::uint64_t round) {
  for (auto& [id, state] : states) {
    if (const auto* c = std::get_if<phase::Cooldown>(&state); c && round >= c->until_round) {
      state = phase::Baseline{c->memo};
    }
  }
}

std::vector<Action> evaluate(std::span<const KernelView> views, const StateMap& states,
                             const PolicyConfig& config, std::uint64_t /*round*/) {
  std::vector<Action> actions;
  std::vector<KernelId> touched;
  std::uint32_t probing = 0;
  for (const auto& [id, state] : states) {
    if (std::holds_alternative<phase::Probing>(state)) ++probing;
  }

  std::vector<const KernelView*> by_id;
  for (const KernelView& v : views) by_id.push_back(&v);
  std::sort(by_id.begin(), by_id.end(),
            [](const KernelView* a, const KernelView* b) { return a->id < b->id; });

  for (const KernelView* v : by_id) {
    const PhaseState& state = state_of(states, v->id);
    const TargetId* target = nullptr;
    bool is_probe = false;
    if (const auto* p = std::get_if<phase::Probing>(&state)) {
      target = &p->target;
      is_probe = true;
    } else if (const auto* c = std::get_if<phase::Committed>(&state)) {
      target = &c->target;
    } else {
      continue;
    }

    const KernelStats* remote = remote_stats(*v, *target);
    const std::uint64_t needed = is_probe ? config.min_samples : 1;
    if (remote == nullptr || remote->count < needed || v->local_episode.count == 0) continue;

    Action a;
    a.kernel = v->id;
    a.target = *target;
    a.local_mean_ms = v->local_episode.mean_ms();
    a.remote_mean_ms = remote->mean_ms();
    a.speedup = observed_speedup(v->local_episode.mean_ns, remote->mean_ns);
    const bool good = *a.speedup >= config.threshold();
    if (is_probe) {
      a.kind = good ? ActionKind::Commit : ActionKind::Revert;
      --probing;
    } else if (!good) {
      a.kind = ActionKind::Revert;
    } else {
      continue;
    }
    touched.push_back(v->id);
    actions.push_back(std::move(a));
  }

  while (probing < config.max_concurrent_probes) {
    auto candidate = select_candidate(views, states, config, touched);
    if (!candidate) break;
    const KernelView* v = nullptr;
    for (const KernelView* x : by_id) {
      if (x->id == candidate->first) v = x;
    }
    Action a;
    a.kind = ActionKind::Offload;
    a.kernel = candidate->first;
    a.target = candidate->second;
    a.local_mean_ms = v->local_episode.count > 0 ? v->local_episode.mean_ms()
                                                 : v->local_total.mean_ms();
    touched.push_back(candidate->first);
    actions.push_back(std::move(a));
    ++probing;
  }
  return actions;
}

}  // namespace vpe

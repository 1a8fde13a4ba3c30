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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vpe/ids.hpp"
#include "vpe/profiler.hpp"

namespace vpe {

struct PolicyConfig {
  std::uint32_t min_samples = 5;
  double improve_margin = 0.05;
  std::uint32_t cooldown_rounds = 10;
  std::uint32_t eval_period = 20;
  std::uint32_t warmup = 3;
  std::uint32_t max_concurrent_probes = 1;

  /// Throws Error(InvalidConfig) unless min_samples >= 2,
  /// 0 <= improve_margin < 1, eval_period >= 1 and max_concurrent_probes >= 1.
  void validate() const;
  double threshold() const { return 1.0 + improve_margin; }
};

/// Outcome of the last probe that ended in a revert. The target is not
/// tried again until the local mean moves away from `local_mean_ms` by more
/// than the improve margin.
struct RevertMemo {
  TargetId target;
  double local_mean_ms = 0.0;
};

namespace phase {
struct Baseline {
  std::optional<RevertMemo> memo;
};
struct Probing {
  TargetId target;
  std::uint64_t started_round = 0;
};
struct Committed {
  TargetId target;
};
struct Cooldown {
  std::uint64_t until_round = 0;
  std::optional<RevertMemo> memo;
};
}  // namespace phase

using PhaseState = std::variant<phase::Baseline, phase::Probing, phase::Committed, phase::Cooldown>;

std::string_view phase_name(const PhaseState& state);

using StateMap = std::map<KernelId, PhaseState>;

enum class ActionKind { None, Offload, Commit, Revert };

std::string_view to_string(ActionKind kind);

struct Action {
  ActionKind kind = ActionKind::None;
  KernelId kernel;
  TargetId target;
  std::optional<double> local_mean_ms;
  std::optional<double> remote_mean_ms;
  std::optional<double> speedup;
};

/// local / remote. Throws Error(InvalidConfig) unless both are positive.
double speedup(double local_mean, double remote_mean);

/// What the policy needs to know about one kernel at evaluation time.
struct KernelView {
  KernelId id;
  /// Non-local targets offering the kernel, in preference order.
  std::vector<TargetId> alternates;
  /// Local samples over the whole run; ranks kernels.
  KernelStats local_total;
  /// Local samples since the last revert; the baseline for speedups.
  KernelStats local_episode;
  /// Per alternate target, samples of the current probe or commit.
  std::map<TargetId, KernelStats> remote_episode;
};

/// Hottest eligible kernel with a target to try: Baseline state, at least
/// min_samples local samples. Kernels in `skip` are ignored. Does not look
/// at the probe limit; evaluate() enforces it.
std::optional<std::pair<KernelId, TargetId>> select_candidate(std::span<const KernelView> views,
                                                             const StateMap& states,
                                                             const PolicyConfig& config,
                                                             std::span<const KernelId> skip = {});

/// Cooldown states whose round has come revert to Baseline (keeping the memo).
void expire_cooldowns(StateMap& states, std::uint64_t round);

/// One evaluation round. Probing kernels with enough remote samples get
/// Commit or Revert; Committed kernels are re-checked and reverted when
/// their speedup drops under the threshold; then Offload actions fill free
/// probe slots. Pure: identical inputs give identical actions. Throws
/// Error(InvalidState) if `states` misses a kernel of `views`.
std::vector<Action> evaluate(std::span<const KernelView> views, const StateMap& states,
                             const PolicyConfig& config, std::uint64_t round);

}  // namespace vpe

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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "vpe/ids.hpp"

namespace vpe {

enum class ClockKind : std::uint8_t { Real, Virtual };

/// Source of timestamps used to measure invocations. A hardware-counter
/// source can implement this without touching the profiler or registry.
class MeasurementSource {
 public:
  virtual ~MeasurementSource() = default;
  virtual std::int64_t now_ns() const = 0;
  virtual ClockKind kind() const = 0;
};

/// Monotonic host clock.
class SteadyClockSource final : public MeasurementSource {
 public:
  std::int64_t now_ns() const override;
  ClockKind kind() const override { return ClockKind::Real; }
};

struct TimingSample {
  KernelId kernel;
  TargetId target;
  std::int64_t duration_ns = 0;
  std::uint64_t seq = 0;
  ClockKind clock = ClockKind::Real;

  /// Throws Error(InvalidState) on a negative duration.
  static TimingSample make(KernelId kernel, TargetId target, std::int64_t duration_ns,
                           std::uint64_t seq, ClockKind clock);
};

struct KernelStats {
  std::uint64_t count = 0;
  double mean_ns = 0.0;
  double m2 = 0.0;
  std::int64_t total_ns = 0;
  std::uint64_t warmup_skipped = 0;

  /// Sample standard deviation; 0 when fewer than two samples.
  double stddev_ns() const;
  double mean_ms() const { return mean_ns / 1e6; }
  double stddev_ms() const { return stddev_ns() / 1e6; }
  double total_ms() const { return static_cast<double>(total_ns) / 1e6; }
};

struct RankEntry {
  KernelId kernel;
  std::int64_t total_ns = 0;
};

struct ReportRow {
  KernelId kernel;
  std::string kernel_name;
  TargetId target;
  std::uint64_t count = 0;
  double mean_ms = 0.0;
  double stddev_ms = 0.0;
  double total_ms = 0.0;
};

using KernelNameLookup = std::function<std::string(KernelId)>;

/// Per-(kernel, target) running statistics with warm-up exclusion.
///
/// Each pair keeps three accumulators: every sample, counted (post warm-up)
/// samples over the whole run, and counted samples of the current episode.
/// An episode starts when the pair is first seen or on begin_episode(); its
/// first `warmup` samples are tallied in `warmup_skipped` only.
///
/// record() may run concurrently with reads. A reader always sees the three
/// accumulators of one pair in a mutually consistent state.
class Profiler {
 public:
  explicit Profiler(std::uint32_t warmup = 3);

  std::uint32_t warmup() const { return warmup_; }

  void record(const TimingSample& sample);

  /// Counted samples since the start of the run. Empty if never observed.
  KernelStats stats(KernelId kernel, const TargetId& target) const;
  /// Counted samples since the last begin_episode() on the pair.
  KernelStats episode_stats(KernelId kernel, const TargetId& target) const;

  /// Resets warm-up counting and the episode accumulator for the pair.
  void begin_episode(KernelId kernel, const TargetId& target);

  /// Local-target totals, descending, ties by ascending kernel id.
  std::vector<RankEntry> ranking() const;

  /// Kernel with the greatest local-target total among those with at least
  /// `min_samples` counted local samples.
  std::optional<KernelId> hottest(const std::set<KernelId>& exclusions,
                                  std::uint64_t min_samples) const;

  /// One row per observed pair ordered by (kernel id, target). With
  /// `warmup_excluded == false` rows cover every recorded sample.
  std::vector<ReportRow> report(bool warmup_excluded,
                                const KernelNameLookup& names = {}) const;

 private:
  struct Accumulator {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::int64_t total = 0;

    void add(std::int64_t x);
  };

  struct Entry {
    mutable std::mutex mu;
    Accumulator all;
    Accumulator counted;
    Accumulator episode;
    std::uint32_t warmup_remaining = 0;
    std::uint64_t warmup_skipped = 0;
    std::uint64_t episode_warmup_skipped = 0;
  };

  using Key = std::pair<KernelId, TargetId>;

  Entry* find(const Key& key) const;
  Entry& find_or_create(const Key& key);
  static KernelStats to_stats(const Accumulator& acc, std::uint64_t skipped);

  std::uint32_t warmup_;
  mutable std::shared_mutex map_mu_;
  std::map<Key, std::unique_ptr<Entry>> entries_;
};

}  // namespace vpe

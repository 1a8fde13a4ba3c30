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

#include "vpe/profiler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "vpe/error.hpp"

namespace vpe {

std::int64_t SteadyClockSource::now_ns() const {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

TimingSample TimingSample::make(KernelId kernel, TargetId target, std::int64_t duration_ns,
                                std::uint64_t seq, ClockKind clock) {
  if (duration_ns < 0) {
    throw Error(Errc::InvalidState, "negative duration " + std::to_string(duration_ns));
  }
  return TimingSample{kernel, std::move(target), duration_ns, seq, clock};
}

double KernelStats::stddev_ns() const {
  if (count < 2) return 0.0;
  return std::sqrt(m2 / static_cast<double>(count - 1));
}

void Profiler::Accumulator::add(std::int64_t x) {
  ++count;
  total += x;
  const double xd = static_cast<double>(x);
  const double delta = xd - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (xd - mean);
}

Profiler::Profiler(std::uint32_t warmup) : warmup_(warmup) {}

Profiler::Entry* Profiler::find(const Key& key) const {
  std::shared_lock lock(map_mu_);
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : it->second.get();
}

Profiler::Entry& Profiler::find_or_create(const Key& key) {
  if (Entry* e = find(key)) return *e;
  std::unique_lock lock(map_mu_);
  auto& slot = entries_[key];
  if (!slot) {
    slot = std::make_unique<Entry>();
    slot->warmup_remaining = warmup_;
  }
  return *slot;
}

void Profiler::record(const TimingSample& sample) {
  if (sample.duration_ns < 0) {
    throw Error(Errc::InvalidState, "negative duration");
  }
  Entry& e = find_or_create({sample.kernel, sample.target});
  std::lock_guard lock(e.mu);
  e.all.add(sample.duration_ns);
  if (e.warmup_remaining > 0) {
    --e.warmup_remaining;
    ++e.warmup_skipped;
    ++e.episode_warmup_skipped;
    return;
  }
  e.counted.add(sample.duration_ns);
  e.episode.add(sample.duration_ns);
}

KernelStats Profiler::to_stats(const Accumulator& acc, std::uint64_t skipped) {
  return KernelStats{acc.count, acc.mean, acc.m2, acc.total, skipped};
}

KernelStats Profiler::stats(KernelId kernel, const TargetId& target) const {
  const Entry* e = find({kernel, target});
  if (e == nullptr) return {};
  std::lock_guard lock(e->mu);
  return to_stats(e->counted, e->warmup_skipped);
}

KernelStats Profiler::episode_stats(KernelId kernel, const TargetId& target) const {
  const Entry* e = find({kernel, target});
  if (e == nullptr) return {};
  std::lock_guard lock(e->mu);
  return to_stats(e->episode, e->episode_warmup_skipped);
}

void Profiler::begin_episode(KernelId kernel, const TargetId& target) {
  Entry& e = find_or_create({kernel, target});
  std::lock_guard lock(e.mu);
  e.warmup_remaining = warmup_;
  e.episode = {};
  e.episode_warmup_skipped = 0;
}

std::vector<RankEntry> Profiler::ranking() const {
  std::vector<RankEntry> out;
  {
    std::shared_lock lock(map_mu_);
    for (const auto& [key, entry] : entries_) {
      if (key.second != kLocalTarget) continue;
      std::lock_guard entry_lock(entry->mu);
      out.push_back({key.first, entry->counted.total});
    }
  }
  std::sort(out.begin(), out.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.total_ns != b.total_ns) return a.total_ns > b.total_ns;
    return a.kernel < b.kernel;
  });
  return out;
}

std::optional<KernelId> Profiler::hottest(const std::set<KernelId>& exclusions,
                                          std::uint64_t min_samples) const {
  for (const RankEntry& r : ranking()) {
    if (exclusions.contains(r.kernel)) continue;
    if (stats(r.kernel, kLocalTarget).count < min_samples) continue;
    return r.kernel;
  }
  return std::nullopt;
}

std::vector<ReportRow> Profiler::report(bool warmup_excluded,
                                        const KernelNameLookup& names) const {
  std::vector<ReportRow> rows;
  std::shared_lock lock(map_mu_);
  for (const auto& [key, entry] : entries_) {
    KernelStats s;
    {
      std::lock_guard entry_lock(entry->mu);
      s = warmup_excluded ? to_stats(entry->counted, entry->warmup_skipped)
                          : to_stats(entry->all, 0);
    }
    ReportRow row;
    row.kernel = key.first;
    row.kernel_name = names ? names(key.first) : "k" + std::to_string(key.first.value);
    row.target = key.second;
    row.count = s.count;
    row.mean_ms = s.mean_ms();
    row.stddev_ms = s.stddev_ms();
    row.total_ms = s.total_ms();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace vpe

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

#include <gtest/gtest.h>

#include <thread>

#include "oracles.hpp"
#include "test_util.hpp"
#include "vpe/profiler.hpp"
#include "vpe/workload.hpp"

using namespace vpe;

namespace {

TimingSample sample(std::uint32_t k, const TargetId& t, std::int64_t ns) {
  static std::uint64_t seq = 0;
  return TimingSample::make(KernelId{k}, t, ns, seq++, ClockKind::Virtual);
}

}  // namespace

TEST(Profiler, WarmupSamplesAreExcluded) {
  Profiler p(3);
  for (std::int64_t ns : {1000, 1000, 1000, 10, 20, 30}) p.record(sample(1, kLocalTarget, ns));
  const KernelStats s = p.stats(KernelId{1}, kLocalTarget);
  EXPECT_EQ(s.count, 3U);
  EXPECT_EQ(s.warmup_skipped, 3U);
  EXPECT_DOUBLE_EQ(s.mean_ns, 20.0);
  EXPECT_EQ(s.total_ns, 60);
  EXPECT_DOUBLE_EQ(s.stddev_ns(), 10.0);
}

TEST(Profiler, UnknownPairIsEmpty) {
  Profiler p;
  const KernelStats s = p.stats(KernelId{9}, kSimTarget);
  EXPECT_EQ(s.count, 0U);
  EXPECT_EQ(s.stddev_ns(), 0.0);
}

TEST(Profiler, NegativeDurationRejected) {
  EXPECT_EQ(test::code_of([] { TimingSample::make(KernelId{1}, kLocalTarget, -1, 0, ClockKind::Real); }),
            Errc::InvalidState);
}

TEST(Profiler, WelfordMatchesTwoPass) {
  Rng rng(4);
  Profiler p(0);
  std::vector<double> xs;
  for (int i = 0; i < 5000; ++i) {
    const std::int64_t ns = 1000000 + rng.uniform(-400000, 400000);
    xs.push_back(static_cast<double>(ns));
    p.record(sample(1, kLocalTarget, ns));
  }
  const auto ref = oracle::two_pass(xs);
  const KernelStats s = p.stats(KernelId{1}, kLocalTarget);
  EXPECT_NEAR(s.mean_ns, ref.mean, 1e-9 * ref.mean);
  EXPECT_NEAR(s.stddev_ns(), ref.stddev, 1e-9 * ref.stddev);
}

TEST(Profiler, EpisodesRestartWarmup) {
  Profiler p(2);
  for (int i = 0; i < 5; ++i) p.record(sample(1, kSimTarget, 100));
  p.begin_episode(KernelId{1}, kSimTarget);
  EXPECT_EQ(p.episode_stats(KernelId{1}, kSimTarget).count, 0U);
  for (std::int64_t ns : {900, 900, 50, 70}) p.record(sample(1, kSimTarget, ns));
  const KernelStats ep = p.episode_stats(KernelId{1}, kSimTarget);
  EXPECT_EQ(ep.count, 2U);
  EXPECT_DOUBLE_EQ(ep.mean_ns, 60.0);
  const KernelStats all = p.stats(KernelId{1}, kSimTarget);
  EXPECT_EQ(all.count, 5U);  // 3 + 2 counted
  EXPECT_EQ(all.warmup_skipped, 4U);
}

TEST(Profiler, RankingAndHottest) {
  Profiler p(0);
  for (int i = 0; i < 10; ++i) p.record(sample(1, kLocalTarget, 10));
  for (int i = 0; i < 2; ++i) p.record(sample(2, kLocalTarget, 500));
  for (int i = 0; i < 10; ++i) p.record(sample(3, kLocalTarget, 10));
  p.record(sample(4, kSimTarget, 100000));  // remote time never ranks
  const auto rank = p.ranking();
  ASSERT_EQ(rank.size(), 3U);
  EXPECT_EQ(rank[0].kernel, KernelId{2});
  EXPECT_EQ(rank[1].kernel, KernelId{1});  // tie broken by id
  EXPECT_EQ(rank[2].kernel, KernelId{3});
  EXPECT_EQ(p.hottest({}, 1), KernelId{2});
  EXPECT_EQ(p.hottest({}, 5), KernelId{1});
  EXPECT_EQ(p.hottest({KernelId{1}}, 5), KernelId{3});
  EXPECT_FALSE(p.hottest({KernelId{1}, KernelId{3}}, 5).has_value());
}

TEST(Profiler, ReportRowsOrderedAndNamed) {
  Profiler p(1);
  for (int i = 0; i < 3; ++i) p.record(sample(2, kSimTarget, 2000000));
  for (int i = 0; i < 3; ++i) p.record(sample(2, kLocalTarget, 4000000));
  for (int i = 0; i < 3; ++i) p.record(sample(1, kLocalTarget, 1000000));
  const auto rows = p.report(true, [](KernelId k) { return "k" + std::to_string(k.value); });
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].kernel_name, "k1");
  EXPECT_EQ(rows[1].target, kLocalTarget);
  EXPECT_EQ(rows[2].target, kSimTarget);
  EXPECT_EQ(rows[1].count, 2U);
  EXPECT_DOUBLE_EQ(rows[1].mean_ms, 4.0);
  EXPECT_DOUBLE_EQ(rows[1].total_ms, 8.0);
  const auto raw = p.report(false);
  EXPECT_EQ(raw[1].count, 3U);
}

TEST(Profiler, ConcurrentRecordKeepsCounts) {
  Profiler p(0);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&p, t] {
      for (int i = 0; i < 2000; ++i) {
        p.record(TimingSample::make(KernelId{static_cast<std::uint32_t>(1 + t % 2)}, kLocalTarget,
                                    100, 0, ClockKind::Real));
        (void)p.stats(KernelId{1}, kLocalTarget);
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(p.stats(KernelId{1}, kLocalTarget).count, 4000U);
  EXPECT_EQ(p.stats(KernelId{2}, kLocalTarget).total_ns, 400000);
}

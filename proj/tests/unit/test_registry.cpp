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

#include "test_util.hpp"
#include "vpe/error.hpp"
#include "vpe/registry.hpp"
#include "vpe/targets.hpp"

using namespace vpe;

namespace {

const Signature kAddOne{{ValueKind::I64}, ValueKind::I64};

Implementation adder(std::int64_t delta) {
  return [delta](Args a) -> Value { return std::get<std::int64_t>(a[0]) + delta; };
}

}  // namespace

TEST(Registry, RegisterAndInvokeLocal) {
  Registry r;
  const KernelId id = r.register_kernel("inc", kAddOne, {{kLocalTarget, adder(1)}});
  EXPECT_EQ(id.value, 1U);
  const Value args[] = {std::int64_t{41}};
  auto [v, rec] = r.invoke(id, args, {});
  EXPECT_EQ(std::get<std::int64_t>(v), 42);
  EXPECT_EQ(rec.target, kLocalTarget);
  EXPECT_EQ(rec.binding_version, 0U);
  EXPECT_EQ(r.find("inc"), id);
  EXPECT_EQ(r.name_of(id), "inc");
  EXPECT_FALSE(r.find("nope").has_value());
}

TEST(Registry, RegistrationErrors) {
  Registry r;
  r.register_kernel("k", kAddOne, {{kLocalTarget, adder(1)}});
  EXPECT_EQ(test::code_of([&] { r.register_kernel("k", kAddOne, {{kLocalTarget, adder(1)}}); }),
            Errc::DuplicateKernel);
  EXPECT_EQ(test::code_of([&] { r.register_kernel("m", kAddOne, {{kSimTarget, adder(1)}}); }),
            Errc::MissingImplementation);
  EXPECT_EQ(test::code_of([&] { r.register_kernel("", kAddOne, {{kLocalTarget, adder(1)}}); }),
            Errc::InvalidSignature);
  EXPECT_EQ(test::code_of([&] {
              r.register_kernel("t", kAddOne,
                                {{kLocalTarget, adder(1)}, {kSimTarget, adder(2)},
                                 {kSimTarget, adder(3)}});
            }),
            Errc::InvalidSignature);
  EXPECT_EQ(r.kernels().size(), 1U);
}

TEST(Registry, LocalTargetListedFirst) {
  Registry r;
  const KernelId id =
      r.register_kernel("k", kAddOne, {{kSimTarget, adder(2)}, {kLocalTarget, adder(1)}});
  const auto& d = r.descriptor(id);
  ASSERT_EQ(d.targets.size(), 2U);
  EXPECT_EQ(d.targets[0], kLocalTarget);
  EXPECT_EQ(d.alternates(), std::vector<TargetId>{kSimTarget});
  EXPECT_TRUE(d.has_target(kSimTarget));
  EXPECT_FALSE(d.has_target(kWorkerTarget));
}

TEST(Registry, ArgumentChecks) {
  Registry r;
  const KernelId id = r.register_kernel("k", kAddOne, {{kLocalTarget, adder(1)}},
                                        [](Args a) {
                                          if (std::get<std::int64_t>(a[0]) < 0) {
                                            throw Error(Errc::ArgumentMismatch, "negative");
                                          }
                                        });
  const Value wrong_kind[] = {Bytes{"x"}};
  const Value too_many[] = {std::int64_t{1}, std::int64_t{2}};
  const Value negative[] = {std::int64_t{-1}};
  EXPECT_EQ(test::code_of([&] { r.invoke(id, wrong_kind, {}); }), Errc::ArgumentMismatch);
  EXPECT_EQ(test::code_of([&] { r.invoke(id, too_many, {}); }), Errc::ArgumentMismatch);
  EXPECT_EQ(test::code_of([&] { r.invoke(id, negative, {}); }), Errc::ArgumentMismatch);
  EXPECT_EQ(test::code_of([&] { r.invoke(KernelId{77}, negative, {}); }), Errc::UnknownKernel);
}

TEST(Registry, MalformedMatrixRejected) {
  Registry r;
  const KernelId id = r.register_kernel(
      "m", {{ValueKind::I32Mat}, ValueKind::I64}, {{kLocalTarget, [](Args) -> Value {
                                                      return std::int64_t{0};
                                                    }}});
  I32Matrix bad(2, 2);
  bad.data.pop_back();
  const Value args[] = {bad};
  EXPECT_EQ(test::code_of([&] { r.invoke(id, args, {}); }), Errc::ArgumentMismatch);
}

TEST(Registry, RebindSwitchesTargetAndBumpsVersion) {
  Registry r;
  const KernelId id =
      r.register_kernel("k", kAddOne, {{kLocalTarget, adder(1)}, {kSimTarget, adder(100)}});
  const Value args[] = {std::int64_t{0}};
  EXPECT_EQ(std::get<std::int64_t>(r.invoke(id, args, {}).first), 1);
  const Binding b = r.rebind(id, kSimTarget);
  EXPECT_EQ(b.target, kSimTarget);
  EXPECT_EQ(b.version, 1U);
  auto [v, rec] = r.invoke(id, args, {});
  EXPECT_EQ(std::get<std::int64_t>(v), 100);
  EXPECT_EQ(rec.target, kSimTarget);
  EXPECT_EQ(rec.binding_version, 1U);
  EXPECT_EQ(r.rebind(id, kLocalTarget).version, 2U);
  EXPECT_EQ(test::code_of([&] { r.rebind(id, kWorkerTarget); }), Errc::MissingImplementation);
  EXPECT_EQ(r.current_binding(id).version, 2U);
}

TEST(Registry, FailingTargetRevertsToLocalAndReports) {
  Registry r;
  const KernelId id = r.register_kernel(
      "k", kAddOne,
      {{kLocalTarget, adder(1)},
       {kWorkerTarget, [](Args) -> Value { throw Error(Errc::Transport, "down"); }}});
  r.rebind(id, kWorkerTarget);
  int calls = 0;
  InvocationContext ctx;
  ctx.on_target_failure = [&](KernelId k, const TargetId& t, const Error& e) {
    ++calls;
    EXPECT_EQ(k, id);
    EXPECT_EQ(t, kWorkerTarget);
    EXPECT_EQ(e.code(), Errc::Transport);
  };
  const Value args[] = {std::int64_t{1}};
  EXPECT_EQ(test::code_of([&] { r.invoke(id, args, ctx); }), Errc::Transport);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(r.current_binding(id).target, kLocalTarget);
  EXPECT_EQ(std::get<std::int64_t>(r.invoke(id, args, ctx).first), 2);
}

TEST(Registry, ForeignExceptionsBecomeExecutionFailed) {
  Registry r;
  const KernelId id = r.register_kernel(
      "k", kAddOne,
      {{kLocalTarget, adder(1)}, {kSimTarget, [](Args) -> Value { throw std::runtime_error("x"); }}});
  r.rebind(id, kSimTarget);
  const Value args[] = {std::int64_t{1}};
  EXPECT_EQ(test::code_of([&] { r.invoke(id, args, {}); }), Errc::ExecutionFailed);
  EXPECT_EQ(r.current_binding(id).target, kLocalTarget);
}

TEST(Registry, WrongResultKindIsInvariantViolation) {
  Registry r;
  const KernelId id = r.register_kernel(
      "k", kAddOne, {{kLocalTarget, [](Args) -> Value { return Bytes{"oops"}; }}});
  const Value args[] = {std::int64_t{1}};
  EXPECT_EQ(test::code_of([&] { r.invoke(id, args, {}); }), Errc::InvalidState);
}

TEST(Registry, RecordsIntoProfilerWithVirtualClock) {
  CostModel model;
  model.set("k", CostEntry{0.0, 2.5, 1.0, UnitsFormula::Constant});
  SimulatedPlatform platform(model, 1);
  Registry r;
  const KernelId id = r.register_kernel(
      "k", kAddOne,
      {{kLocalTarget, platform.host("k", adder(1))}, {kSimTarget, platform.accelerator("k", adder(1))}});
  Profiler profiler(0);
  InvocationContext ctx{&platform.clock(), &profiler, {}};
  const Value args[] = {std::int64_t{1}};
  for (int i = 0; i < 4; ++i) {
    auto [v, rec] = r.invoke(id, args, ctx);
    EXPECT_EQ(rec.duration_ns, 2500000);
    EXPECT_EQ(rec.clock, ClockKind::Virtual);
  }
  const KernelStats s = profiler.stats(id, kLocalTarget);
  EXPECT_EQ(s.count, 4U);
  EXPECT_DOUBLE_EQ(s.mean_ms(), 2.5);
  EXPECT_EQ(platform.clock().now_ns(), 10000000);
}

TEST(Registry, SequenceNumbersIncrease) {
  Registry r;
  const KernelId id = r.register_kernel("k", kAddOne, {{kLocalTarget, adder(1)}});
  const Value args[] = {std::int64_t{1}};
  const auto a = r.invoke(id, args, {}).second.seq;
  const auto b = r.invoke(id, args, {}).second.seq;
  EXPECT_LT(a, b);
}

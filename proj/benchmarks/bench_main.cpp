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

#include <benchmark/benchmark.h>

#include "vpe/catalog.hpp"
#include "vpe/profiler.hpp"
#include "vpe/registry.hpp"
#include "vpe/wire.hpp"
#include "vpe/workload.hpp"

namespace {

using namespace vpe;

void BM_DirectMatmul(benchmark::State& state) {
  const CatalogEntry& e = builtin_kernel("matmul");
  const auto args = make_workload("matmul", static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(e.local(args));
}
BENCHMARK(BM_DirectMatmul)->Arg(8)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

// Same body through the registry: binding load, argument checks, timing and
// profiler record.
void BM_RegistryMatmul(benchmark::State& state) {
  const CatalogEntry& e = builtin_kernel("matmul");
  Registry r;
  Profiler profiler(3);
  const KernelId id = r.register_kernel(e.name, e.signature, {{kLocalTarget, e.local}}, e.check);
  const InvocationContext ctx{nullptr, &profiler, {}};
  const auto args = make_workload("matmul", static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(r.invoke(id, args, ctx));
}
BENCHMARK(BM_RegistryMatmul)->Arg(8)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_Rebind(benchmark::State& state) {
  const CatalogEntry& e = builtin_kernel("dot");
  const TargetId alt{"alt"};
  Registry r;
  const KernelId id = r.register_kernel(e.name, e.signature, {{kLocalTarget, e.local}, {alt, e.local}});
  bool flip = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(r.rebind(id, flip ? alt : kLocalTarget));
    flip = !flip;
  }
}
BENCHMARK(BM_Rebind);

void BM_Marshal(benchmark::State& state) {
  const auto args = make_workload("matmul", static_cast<std::uint64_t>(state.range(0)), 1);
  std::size_t bytes = 0;
  for (auto _ : state) {
    const auto buf = wire::marshal(args);
    bytes = buf.size();
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_Marshal)->Arg(64)->Arg(256);

void BM_Unmarshal(benchmark::State& state) {
  const auto buf =
      wire::marshal(make_workload("matmul", static_cast<std::uint64_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(wire::unmarshal(buf));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * buf.size()));
}
BENCHMARK(BM_Unmarshal)->Arg(64)->Arg(256);

void BM_FftFixed(benchmark::State& state) {
  const CatalogEntry& e = builtin_kernel("fft");
  const auto args = make_workload("fft", static_cast<std::uint64_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(e.local(args));
}
BENCHMARK(BM_FftFixed)->Arg(256)->Arg(4096)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

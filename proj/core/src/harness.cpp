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

#include "vpe/harness.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "vpe/catalog.hpp"
#include "vpe/error.hpp"
#include "vpe/pgm.hpp"
#include "vpe/registry.hpp"
#include "vpe/remote.hpp"
#include "vpe/targets.hpp"
#include "vpe/workload.hpp"

namespace vpe {

namespace {

// Separate streams for workload data and platform noise.
std::uint64_t platform_seed(std::uint64_t seed) { return seed * 0x9E3779B97F4A7C15ULL + 1; }

std::optional<double> row_mean(const std::vector<ReportRow>& rows, const std::string& target) {
  for (const ReportRow& r : rows) {
    if (r.target.name == target && r.count > 0) return r.mean_ms;
  }
  return std::nullopt;
}

std::optional<double> ratio(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a || !b || *a <= 0.0 || *b <= 0.0) return std::nullopt;
  return *a / *b;
}

// Worker connection for one run, spawning the process when needed.
struct WorkerSession {
  std::unique_ptr<remote::WorkerProcess> process;
  std::shared_ptr<remote::SharedWorkerClient> client;

  explicit WorkerSession(const RunConfig& config) {
    net::Endpoint ep;
    if (config.endpoint) {
      ep = *config.endpoint;
    } else {
      std::vector<std::string> extra;
      if (config.max_payload != wire::kDefaultMaxPayload) {
        extra = {"--max-payload", std::to_string(config.max_payload)};
      }
      process = std::make_unique<remote::WorkerProcess>(*config.worker_executable, extra);
      ep = process->endpoint();
    }
    client = std::make_shared<remote::SharedWorkerClient>(ep, config.max_payload);
    client->ping();
  }

  ~WorkerSession() {
    if (!process) return;
    try {
      client->shutdown();
      process->wait();
    } catch (const Error&) {
      // The process destructor terminates it.
    }
  }
};

}  // namespace

RunMode parse_mode(std::string_view text) {
  if (text == "auto") return RunMode::Auto;
  if (text == "local-only") return RunMode::LocalOnly;
  if (text == "force-remote") return RunMode::ForceRemote;
  throw Error(Errc::InvalidConfig, "unknown mode '" + std::string(text) + "'");
}

TargetChoice parse_target_choice(std::string_view text) {
  if (text == "sim") return TargetChoice::Sim;
  if (text == "worker") return TargetChoice::Worker;
  throw Error(Errc::InvalidConfig, "unknown target '" + std::string(text) + "'");
}

std::string_view to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Auto: return "auto";
    case RunMode::LocalOnly: return "local-only";
    case RunMode::ForceRemote: return "force-remote";
  }
  return "auto";
}

std::string_view to_string(TargetChoice target) {
  return target == TargetChoice::Sim ? "sim" : "worker";
}

void RunConfig::validate() const {
  builtin_kernel(kernel);  // Error(UnknownKernel)
  if (iters < 1) throw Error(Errc::InvalidConfig, "iters must be at least 1");
  policy.validate();
  if (target == TargetChoice::Sim) {
    if (!profile) throw Error(Errc::InvalidConfig, "the sim target needs a cost-model profile");
    if (!profile->contains(kernel)) {
      throw Error(Errc::InvalidConfig, "profile has no entry for '" + kernel + "'");
    }
  } else if (!endpoint && !worker_executable) {
    throw Error(Errc::InvalidConfig, "the worker target needs an endpoint or a worker executable");
  }
}

RunReport run_benchmark(const RunConfig& config) {
  config.validate();
  const CatalogEntry& entry = builtin_kernel(config.kernel);
  const std::vector<Value> args =
      config.args ? *config.args : make_workload(config.kernel, config.size, config.seed,
                                                 config.ksize);

  std::optional<SimulatedPlatform> platform;
  std::optional<WorkerSession> worker;
  Registry registry;
  const TargetId remote = config.target == TargetChoice::Sim ? kSimTarget : kWorkerTarget;
  std::vector<std::pair<TargetId, Implementation>> impls;
  const MeasurementSource* clock = nullptr;
  SteadyClockSource steady;
  if (config.target == TargetChoice::Sim) {
    platform.emplace(*config.profile, platform_seed(config.seed));
    impls.emplace_back(kLocalTarget, platform->host(entry.name, entry.local));
    impls.emplace_back(remote, platform->accelerator(entry.name, entry.local));
    clock = &platform->clock();
  } else {
    impls.emplace_back(kLocalTarget, entry.local);
    if (config.mode != RunMode::LocalOnly) {
      worker.emplace(config);
      impls.emplace_back(remote, remote::remote_implementation(worker->client, entry.wire_id));
    }
    clock = &steady;
  }
  const KernelId id = registry.register_kernel(entry.name, entry.signature, std::move(impls),
                                               entry.check);
  registry.check_arguments(id, args);

  Profiler profiler(config.policy.warmup);
  Controller controller(registry, profiler, config.policy);
  controller.set_enabled(config.mode == RunMode::Auto);
  const InvocationContext ctx{clock, &profiler, controller.failure_hook()};
  if (config.mode == RunMode::ForceRemote) registry.rebind(id, remote);

  RunReport report;
  report.kernel = entry.name;
  report.remote_target = remote.name;
  report.durations_ms.reserve(config.iters);
  report.iteration_targets.reserve(config.iters);
  for (std::uint64_t i = 0; i < config.iters; ++i) {
    std::pair<Value, InvocationRecord> out;
    try {
      out = registry.invoke(id, args, ctx);
    } catch (const Error& e) {
      // A failed offload has already been reverted to local; retry there.
      if (config.mode != RunMode::Auto || e.code() == Errc::ArgumentMismatch) throw;
      out = registry.invoke(id, args, ctx);
    }
    report.durations_ms.push_back(static_cast<double>(out.second.duration_ns) / 1e6);
    report.iteration_targets.push_back(out.second.target.name);
    report.result = std::move(out.first);
    controller.on_invocation();
  }

  report.rows = profiler.report(true, [&](KernelId k) { return registry.name_of(k); });
  report.trace = controller.trace();
  report.local_mean_ms = row_mean(report.rows, kLocalTarget.name);
  report.remote_mean_ms = row_mean(report.rows, remote.name);
  report.speedup = ratio(report.local_mean_ms, report.remote_mean_ms);
  report.final_target = registry.current_binding(id).target.name;
  report.rebinds = controller.rebinds(id);
  return report;
}

SweepReport run_sweep(const SweepConfig& config) {
  if (config.sizes.empty()) throw Error(Errc::InvalidConfig, "sweep needs at least one size");
  const CostEntry& cost = config.profile.entry(config.kernel);
  SweepReport report;
  for (std::uint64_t n : config.sizes) {
    RunConfig rc;
    rc.kernel = config.kernel;
    rc.size = n;
    rc.iters = config.iters;
    rc.profile = config.profile;
    rc.seed = config.seed;
    rc.policy = config.policy;
    const std::vector<Value> args = make_workload(config.kernel, n, config.seed);
    rc.args = args;
    const RunReport run = run_benchmark(rc);

    SweepPoint p;
    p.size = n;
    p.units = work_units(cost.units, args);
    p.model_local_ms = cost.local_ms(p.units);
    p.model_remote_ms = cost.remote_ms(p.units, true);
    p.setup_ms = cost.setup_ms;
    p.remote_compute_ms = cost.remote_per_unit_ms * p.units;
    p.remote_worth = p.model_remote_ms < p.model_local_ms;
    p.measured_local_ms = run.local_mean_ms;
    p.measured_remote_ms = run.remote_mean_ms;
    p.chosen_target = run.final_target;
    report.points.push_back(p);
  }

  if (cost.units == UnitsFormula::Cubic && cost.local_per_unit_ms > cost.remote_per_unit_ms) {
    report.model_crossover =
        std::cbrt(cost.setup_ms / (cost.local_per_unit_ms - cost.remote_per_unit_ms));
  }
  const auto diff = [](const SweepPoint& p) -> std::optional<double> {
    if (!p.measured_local_ms || !p.measured_remote_ms) return std::nullopt;
    return *p.measured_local_ms - *p.measured_remote_ms;
  };
  for (std::size_t i = 0; i + 1 < report.points.size(); ++i) {
    const auto d0 = diff(report.points[i]);
    const auto d1 = diff(report.points[i + 1]);
    if (!d0 || !d1 || *d0 >= 0.0 || *d1 < 0.0) continue;
    const double n0 = static_cast<double>(report.points[i].size);
    const double n1 = static_cast<double>(report.points[i + 1].size);
    report.measured_crossover = n0 + (n1 - n0) * (-*d0) / (*d1 - *d0);
    break;
  }
  return report;
}

I32Matrix edge_kernel() { return I32Matrix(3, 3, {-1, -1, -1, -1, 8, -1, -1, -1, -1}); }

DemoReport run_demo_frames(const DemoConfig& config) {
  config.policy.validate();
  const CatalogEntry& entry = builtin_kernel("convolution");
  if (!config.profile.contains(entry.name)) {
    throw Error(Errc::InvalidConfig, "profile has no entry for 'convolution'");
  }
  if (config.kernel.rows != config.kernel.cols || config.kernel.rows % 2 == 0) {
    throw Error(Errc::InvalidConfig, "demo kernel must be square with an odd size");
  }

  std::error_code ec;
  if (!std::filesystem::is_directory(config.input_dir, ec)) {
    throw Error(Errc::BadImage, config.input_dir.string() + ": not a directory");
  }
  std::vector<std::filesystem::path> paths;
  for (const auto& de : std::filesystem::directory_iterator(config.input_dir)) {
    if (de.is_regular_file() && de.path().extension() == ".pgm") paths.push_back(de.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw Error(Errc::BadImage, config.input_dir.string() + ": no .pgm frames");
  std::vector<pgm::Image> frames;
  frames.reserve(paths.size());
  for (const auto& path : paths) {
    frames.push_back(pgm::read(path));
    if (frames.back().width != frames.front().width ||
        frames.back().height != frames.front().height) {
      throw Error(Errc::BadImage, path.string() + ": dimensions differ from the first frame");
    }
  }
  if (frames.front().width < config.kernel.cols || frames.front().height < config.kernel.rows) {
    throw Error(Errc::BadImage, paths.front().string() + ": frame smaller than the kernel");
  }
  if (!config.output_dir.empty()) std::filesystem::create_directories(config.output_dir);

  SimulatedPlatform platform(config.profile, platform_seed(config.seed));
  Registry registry;
  const TargetId sim = kSimTarget;
  const KernelId id = registry.register_kernel(
      entry.name, entry.signature,
      {{kLocalTarget, platform.host(entry.name, entry.local)},
       {sim, platform.accelerator(entry.name, entry.local)}},
      entry.check);
  Profiler profiler(config.policy.warmup);
  Controller controller(registry, profiler, config.policy);
  controller.set_enabled(false);
  const InvocationContext ctx{&platform.clock(), &profiler, controller.failure_hook()};

  DemoReport report;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (i == config.enable_after) controller.set_enabled(true);
    const Value args[] = {pgm::to_matrix(frames[i]), config.kernel};
    auto [value, rec] = registry.invoke(id, args, ctx);
    report.frames.push_back({paths[i].filename().string(),
                             static_cast<double>(rec.duration_ns) / 1e6, rec.target.name});
    if (!config.output_dir.empty()) {
      pgm::write(config.output_dir / paths[i].filename(),
                 pgm::from_matrix_clamped(std::get<I64Matrix>(value)));
    }
    const std::size_t before = controller.trace().size();
    controller.on_invocation();
    if (!report.transition_frame) {
      for (std::size_t t = before; t < controller.trace().size(); ++t) {
        if (controller.trace()[t].action == ActionKind::Offload) report.transition_frame = i + 1;
      }
    }
  }
  report.trace = controller.trace();

  const auto fps = [&](std::size_t first, std::size_t last) -> std::optional<double> {
    first += config.policy.warmup;
    if (first >= last) return std::nullopt;
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) sum += report.frames[i].duration_ms;
    const double mean = sum / static_cast<double>(last - first);
    if (mean <= 0.0) return std::nullopt;
    return 1000.0 / mean;
  };
  const std::size_t split = report.transition_frame.value_or(report.frames.size());
  report.fps_before = fps(0, split);
  if (report.transition_frame) report.fps_after = fps(split, report.frames.size());
  report.fps_ratio = ratio(report.fps_after, report.fps_before);
  return report;
}

}  // namespace vpe

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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vpe/controller.hpp"
#include "vpe/cost_model.hpp"
#include "vpe/policy.hpp"
#include "vpe/profiler.hpp"
#include "vpe/socket.hpp"
#include "vpe/value.hpp"
#include "vpe/wire.hpp"

namespace vpe {

enum class RunMode { Auto, LocalOnly, ForceRemote };
enum class TargetChoice { Sim, Worker };

RunMode parse_mode(std::string_view text);
TargetChoice parse_target_choice(std::string_view text);
std::string_view to_string(RunMode mode);
std::string_view to_string(TargetChoice target);

struct RunConfig {
  std::string kernel;
  /// Workload size; 0 selects the kernel default.
  std::uint64_t size = 0;
  std::uint32_t ksize = 3;
  std::uint64_t iters = 200;
  RunMode mode = RunMode::Auto;
  TargetChoice target = TargetChoice::Sim;
  /// Required for the sim target.
  std::optional<CostModel> profile;
  std::uint64_t seed = 1;
  PolicyConfig policy;
  /// Fixed inputs instead of a generated workload.
  std::optional<std::vector<Value>> args;
  /// Worker target: attach to `endpoint`, otherwise spawn `worker_executable`.
  std::optional<net::Endpoint> endpoint;
  std::optional<std::filesystem::path> worker_executable;
  std::uint32_t max_payload = wire::kDefaultMaxPayload;

  /// Throws Error(InvalidConfig).
  void validate() const;
};

struct RunReport {
  std::string kernel;
  std::string remote_target;
  std::vector<double> durations_ms;
  std::vector<std::string> iteration_targets;
  /// Warm-up excluded, one row per (kernel, target).
  std::vector<ReportRow> rows;
  std::vector<TraceEntry> trace;
  std::optional<double> local_mean_ms;
  std::optional<double> remote_mean_ms;
  /// local_mean_ms / remote_mean_ms of `rows`.
  std::optional<double> speedup;
  std::string final_target;
  std::uint64_t rebinds = 0;
  Value result;
};

/// Benchmark loop: `iters` invocations of one kernel through the registry.
/// Auto mode lets the controller act; local-only and force-remote pin the
/// binding. With the sim target the report depends only on (config, seed).
RunReport run_benchmark(const RunConfig& config);

struct SweepConfig {
  std::string kernel = "matmul";
  std::vector<std::uint64_t> sizes;
  std::uint64_t iters = 60;
  CostModel profile;
  std::uint64_t seed = 1;
  PolicyConfig policy;
};

struct SweepPoint {
  std::uint64_t size = 0;
  double units = 0.0;
  /// Noise-free model times; remote includes setup.
  double model_local_ms = 0.0;
  double model_remote_ms = 0.0;
  double setup_ms = 0.0;
  double remote_compute_ms = 0.0;
  bool remote_worth = false;
  /// Steady-state means from the auto-mode run at this size.
  std::optional<double> measured_local_ms;
  std::optional<double> measured_remote_ms;
  std::string chosen_target;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  /// Size where the model's local and remote times meet.
  std::optional<double> model_crossover;
  /// Linear interpolation of the first sign change of measured
  /// local - remote across consecutive sizes.
  std::optional<double> measured_crossover;
};

SweepReport run_sweep(const SweepConfig& config);

/// [[-1,-1,-1],[-1,8,-1],[-1,-1,-1]]
I32Matrix edge_kernel();

struct DemoConfig {
  std::filesystem::path input_dir;
  /// Empty: results are not written.
  std::filesystem::path output_dir;
  I32Matrix kernel = edge_kernel();
  /// Frames processed before the controller is enabled.
  std::uint64_t enable_after = 10;
  CostModel profile;
  std::uint64_t seed = 1;
  PolicyConfig policy;
};

struct DemoFrame {
  std::string name;
  double duration_ms = 0.0;
  std::string target;
};

struct DemoReport {
  std::vector<DemoFrame> frames;
  /// Index of the first frame processed after the offload action.
  std::optional<std::size_t> transition_frame;
  /// Frames per virtual second, each segment skipping its first `warmup`
  /// frames.
  std::optional<double> fps_before;
  std::optional<double> fps_after;
  std::optional<double> fps_ratio;
  std::vector<TraceEntry> trace;
};

/// Convolves every *.pgm frame of input_dir (sorted by name) on the
/// simulated platform, clamps to [0, 255] and writes same-named outputs.
/// Throws Error(BadImage) naming the offending file.
DemoReport run_demo_frames(const DemoConfig& config);

}  // namespace vpe

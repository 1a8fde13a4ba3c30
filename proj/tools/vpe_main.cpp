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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "json.hpp"
#include "vpe/catalog.hpp"
#include "vpe/error.hpp"
#include "vpe/harness.hpp"
#include "vpe/report_io.hpp"

namespace {

using nlohmann::json;
using vpe::report::format_double;
using vpe::report::format_optional;

struct PolicyOpts {
  vpe::PolicyConfig policy;

  void add(CLI::App& app) {
    app.add_option("--warmup", policy.warmup, "Warm-up invocations excluded per episode")
        ->capture_default_str();
    app.add_option("--min-samples", policy.min_samples, "Samples required before deciding")
        ->capture_default_str();
    app.add_option("--margin", policy.improve_margin, "Hysteresis margin")->capture_default_str();
    app.add_option("--cooldown", policy.cooldown_rounds, "Rounds after a revert")
        ->capture_default_str();
    app.add_option("--eval-period", policy.eval_period, "Invocations per policy round")
        ->capture_default_str();
    app.add_option("--max-probes", policy.max_concurrent_probes, "Concurrent probes")
        ->capture_default_str();
  }
};

struct OutputOpts {
  std::string format = "csv";
  std::string path;

  void add(CLI::App& app) {
    app.add_option("--out", format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--out-path", path, "Write the report here instead of stdout");
  }
  bool json() const { return format == "json"; }
};

struct SeedOpt {
  std::uint64_t value = 1;
  CLI::Option* opt = nullptr;

  void add(CLI::App& app) {
    opt = app.add_option("--seed", value, "64-bit seed (falls back to $VPE_SEED, then 1)");
  }
  std::uint64_t resolve() const {
    return vpe::cli::resolve_seed(opt->count() > 0 ? std::optional(value) : std::nullopt);
  }
};

struct RunOpts {
  std::string kernel;
  std::uint64_t size = 0;
  std::uint32_t ksize = 3;
  std::uint64_t iters = 200;
  std::string mode = "auto";
  std::string target = "sim";
  std::string profile;
  std::string args;
  std::string endpoint;
  std::string worker_exe;
  std::uint32_t max_payload = vpe::wire::kDefaultMaxPayload;
  std::string durations_path;
  SeedOpt seed;
  PolicyOpts policy;
  OutputOpts out;

  void add(CLI::App& app) {
    app.add_option("--kernel", kernel, "Kernel name")->required();
    app.add_option("--size", size, "Workload size (0: kernel default)")->capture_default_str();
    app.add_option("--ksize", ksize, "Convolution kernel size")->capture_default_str();
    app.add_option("--iters", iters, "Invocations")->capture_default_str();
    app.add_option("--mode", mode, "auto | local-only | force-remote")
        ->check(CLI::IsMember({"auto", "local-only", "force-remote"}))
        ->capture_default_str();
    app.add_option("--target", target, "sim | worker")
        ->check(CLI::IsMember({"sim", "worker"}))
        ->capture_default_str();
    app.add_option("--profile", profile, "Cost-model JSON (sim target)");
    app.add_option("--args", args, "Fixed kernel inputs as a JSON array");
    app.add_option("--endpoint", endpoint, "Attach to a running worker at host:port");
    app.add_option("--worker-exe", worker_exe, "Worker executable to spawn");
    app.add_option("--max-payload", max_payload, "Frame payload limit in bytes")
        ->capture_default_str();
    app.add_option("--durations", durations_path, "Write per-iteration durations as CSV");
    seed.add(app);
    policy.add(app);
    out.add(app);
  }

  vpe::RunConfig config(const std::string& argv0) const {
    vpe::RunConfig c;
    c.kernel = kernel;
    c.size = size;
    c.ksize = ksize;
    c.iters = iters;
    c.mode = vpe::parse_mode(mode);
    c.target = vpe::parse_target_choice(target);
    c.seed = seed.resolve();
    c.policy = policy.policy;
    c.max_payload = max_payload;
    if (!profile.empty()) c.profile = vpe::CostModel::load(vpe::cli::resolve_profile(profile));
    if (!args.empty()) {
      c.args = vpe::cli::parse_args_json(vpe::builtin_kernel(kernel).signature, args);
    }
    if (c.target == vpe::TargetChoice::Worker) {
      if (!endpoint.empty()) {
        c.endpoint = vpe::net::parse_endpoint(endpoint);
      } else if (!worker_exe.empty()) {
        c.worker_executable = worker_exe;
      } else {
        c.worker_executable = std::filesystem::path(argv0).parent_path() / "vpe-worker";
      }
    }
    return c;
  }
};

void emit(const OutputOpts& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out.path, std::ios::binary | std::ios::trunc);
  if (!f) throw vpe::Error(vpe::Errc::Io, "cannot write " + out.path);
  f << text;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string run_text(const vpe::RunReport& r, const RunOpts& opts) {
  if (opts.out.json()) {
    json doc = {{"kernel", r.kernel},
                {"mode", opts.mode},
                {"target", r.remote_target},
                {"stats", json::parse(vpe::report::stats_json(r.rows, -1))},
                {"trace", json::parse(vpe::report::trace_json(r.trace, -1))},
                {"local_mean_ms", opt_json(r.local_mean_ms)},
                {"remote_mean_ms", opt_json(r.remote_mean_ms)},
                {"speedup", opt_json(r.speedup)},
                {"final_target", r.final_target},
                {"rebinds", r.rebinds},
                {"result", vpe::describe(r.result)},
                {"durations_ms", r.durations_ms}};
    return doc.dump(2) + "\n";
  }
  std::string s = vpe::report::stats_csv(r.rows);
  s += "\n" + vpe::report::trace_csv(r.trace);
  s += "\nkernel,final_target,local_mean_ms,remote_mean_ms,speedup,result\n";
  s += r.kernel + "," + r.final_target + "," + format_optional(r.local_mean_ms) + "," +
       format_optional(r.remote_mean_ms) + "," + format_optional(r.speedup) + "," +
       vpe::describe(r.result) + "\n";
  return s;
}

void write_durations(const std::string& path, const vpe::RunReport& r) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw vpe::Error(vpe::Errc::Io, "cannot write " + path);
  f << "iteration,target,duration_ms\n";
  for (std::size_t i = 0; i < r.durations_ms.size(); ++i) {
    f << i << "," << r.iteration_targets[i] << "," << format_double(r.durations_ms[i]) << "\n";
  }
}

int cmd_run(const RunOpts& opts, const std::string& argv0, bool trace_only) {
  const vpe::RunReport r = vpe::run_benchmark(opts.config(argv0));
  if (!opts.durations_path.empty()) write_durations(opts.durations_path, r);
  if (trace_only) {
    emit(opts.out, opts.out.json() ? vpe::report::trace_json(r.trace) + "\n"
                                   : vpe::report::trace_csv(r.trace));
    return 0;
  }
  std::cerr << "vpe: kernel=" << r.kernel << " mode=" << opts.mode
            << " final_target=" << r.final_target << " result=" << vpe::describe(r.result)
            << "\n";
  emit(opts.out, run_text(r, opts));
  return 0;
}

struct SweepOpts {
  std::vector<std::uint64_t> sizes{25, 50, 75, 100, 150, 200};
  std::uint64_t iters = 60;
  std::string profile = "matmul_fit.json";
  SeedOpt seed;
  PolicyOpts policy;
  OutputOpts out;

  void add(CLI::App& app) {
    app.add_option("--sizes", sizes, "Matrix sizes")->delimiter(',')->capture_default_str();
    app.add_option("--iters", iters, "Invocations per size")->capture_default_str();
    app.add_option("--profile", profile, "Fitted cost-model JSON")->capture_default_str();
    seed.add(app);
    policy.add(app);
    out.add(app);
  }
};

int cmd_sweep(const SweepOpts& opts) {
  vpe::SweepConfig c;
  c.sizes = opts.sizes;
  c.iters = opts.iters;
  c.profile = vpe::CostModel::load(vpe::cli::resolve_profile(opts.profile));
  c.seed = opts.seed.resolve();
  c.policy = opts.policy.policy;
  const vpe::SweepReport r = vpe::run_sweep(c);

  if (opts.out.json()) {
    json points = json::array();
    for (const auto& p : r.points) {
      points.push_back({{"size", p.size},
                        {"units", p.units},
                        {"model_local_ms", p.model_local_ms},
                        {"model_remote_ms", p.model_remote_ms},
                        {"setup_ms", p.setup_ms},
                        {"remote_compute_ms", p.remote_compute_ms},
                        {"verdict", p.remote_worth ? "worth" : "not worth"},
                        {"measured_local_ms", opt_json(p.measured_local_ms)},
                        {"measured_remote_ms", opt_json(p.measured_remote_ms)},
                        {"chosen_target", p.chosen_target}});
    }
    json doc = {{"points", points},
                {"model_crossover", opt_json(r.model_crossover)},
                {"measured_crossover", opt_json(r.measured_crossover)}};
    emit(opts.out, doc.dump(2) + "\n");
    return 0;
  }
  std::string s =
      "size,units,model_local_ms,model_remote_ms,setup_ms,remote_compute_ms,verdict,"
      "measured_local_ms,measured_remote_ms,chosen_target\n";
  for (const auto& p : r.points) {
    s += std::to_string(p.size) + "," + format_double(p.units) + "," +
         format_double(p.model_local_ms) + "," + format_double(p.model_remote_ms) + "," +
         format_double(p.setup_ms) + "," + format_double(p.remote_compute_ms) + "," +
         (p.remote_worth ? "worth" : "not worth") + "," + format_optional(p.measured_local_ms) +
         "," + format_optional(p.measured_remote_ms) + "," + p.chosen_target + "\n";
  }
  s += "\nmodel_crossover,measured_crossover\n" + format_optional(r.model_crossover) + "," +
       format_optional(r.measured_crossover) + "\n";
  emit(opts.out, s);
  return 0;
}

struct DemoOpts {
  std::string input;
  std::string output;
  std::string profile = "table1.json";
  std::string kernel_matrix;
  std::uint64_t enable_after = 10;
  SeedOpt seed;
  PolicyOpts policy;
  OutputOpts out;

  DemoOpts() { policy.policy.eval_period = 1; }

  void add(CLI::App& app) {
    app.add_option("--input", input, "Directory of P5 PGM frames")->required();
    app.add_option("--output", output, "Directory for convolved frames");
    app.add_option("--profile", profile, "Cost-model JSON")->capture_default_str();
    app.add_option("--kernel-matrix", kernel_matrix, "Square odd kernel as JSON rows");
    app.add_option("--enable-after", enable_after, "Frames before the policy takes control")
        ->capture_default_str();
    seed.add(app);
    policy.add(app);
    out.add(app);
  }
};

int cmd_demo(const DemoOpts& opts) {
  vpe::DemoConfig c;
  c.input_dir = opts.input;
  c.output_dir = opts.output;
  c.profile = vpe::CostModel::load(vpe::cli::resolve_profile(opts.profile));
  if (!opts.kernel_matrix.empty()) c.kernel = vpe::cli::parse_matrix_json(opts.kernel_matrix);
  c.enable_after = opts.enable_after;
  c.seed = opts.seed.resolve();
  c.policy = opts.policy.policy;
  const vpe::DemoReport r = vpe::run_demo_frames(c);

  const std::string transition =
      r.transition_frame ? std::to_string(*r.transition_frame) : std::string();
  if (opts.out.json()) {
    json frames = json::array();
    for (const auto& f : r.frames) {
      frames.push_back({{"name", f.name}, {"target", f.target}, {"duration_ms", f.duration_ms}});
    }
    json doc = {{"frames", frames},
                {"transition_frame", r.transition_frame ? json(*r.transition_frame) : json()},
                {"fps_before", opt_json(r.fps_before)},
                {"fps_after", opt_json(r.fps_after)},
                {"fps_ratio", opt_json(r.fps_ratio)},
                {"trace", json::parse(vpe::report::trace_json(r.trace, -1))}};
    emit(opts.out, doc.dump(2) + "\n");
    return 0;
  }
  std::string s = "frame,name,target,duration_ms\n";
  for (std::size_t i = 0; i < r.frames.size(); ++i) {
    s += std::to_string(i) + "," + r.frames[i].name + "," + r.frames[i].target + "," +
         format_double(r.frames[i].duration_ms) + "\n";
  }
  s += "\nfps_before,fps_after,fps_ratio,transition_frame\n" + format_optional(r.fps_before) +
       "," + format_optional(r.fps_after) + "," + format_optional(r.fps_ratio) + "," +
       transition + "\n";
  emit(opts.out, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive kernel offloading harness"};
  app.require_subcommand(1);

  RunOpts run_opts;
  auto* run = app.add_subcommand("run", "Benchmark loop with statistics and decision trace");
  run_opts.add(*run);

  RunOpts trace_opts;
  auto* trace = app.add_subcommand("trace", "Benchmark loop, decision trace only");
  trace_opts.add(*trace);

  SweepOpts sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Matrix-size sweep and crossover estimate");
  sweep_opts.add(*sweep);

  DemoOpts demo_opts;
  auto* demo = app.add_subcommand("demo-frames", "Edge detection over PGM frames");
  demo_opts.add(*demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return vpe::cli::kExitBadConfig;
  }

  try {
    if (*run) return cmd_run(run_opts, argv[0], false);
    if (*trace) return cmd_run(trace_opts, argv[0], true);
    if (*sweep) return cmd_sweep(sweep_opts);
    if (*demo) return cmd_demo(demo_opts);
  } catch (const std::exception& e) {
    std::cerr << "vpe: " << e.what() << "\n";
    return vpe::cli::exit_code_for(e);
  }
  return vpe::cli::kExitInternal;
}

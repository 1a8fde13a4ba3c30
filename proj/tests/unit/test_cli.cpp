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
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli_support.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "test_util.hpp"
#include "vpe/catalog.hpp"
#include "vpe/remote.hpp"

using namespace vpe;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs a shell command line, capturing stdout; stderr is discarded.
Run sh(const std::string& cmd) {
  Run r;
  FILE* p = ::popen((cmd + " 2>/dev/null").c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string cli_cmd(const std::string& args) { return std::string("'") + VPE_TEST_CLI_PATH + "' " + args; }

const std::string kProfile = std::string("--profile '") + VPE_TEST_PROFILE_DIR + "/table1.json'";

}  // namespace

TEST(Cli, RunPrintsStatsTraceAndSummary) {
  const auto r = sh(cli_cmd("run --kernel matmul --size 16 --iters 100 " + kProfile));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("kernel,target,count,mean_ms,stddev_ms,total_ms"), std::string::npos);
  EXPECT_NE(r.out.find("round,kernel,action,target,local_mean_ms,remote_mean_ms,speedup"),
            std::string::npos);
  EXPECT_NE(r.out.find(",matmul,commit,sim,"), std::string::npos);
  EXPECT_NE(r.out.find("kernel,final_target,local_mean_ms,remote_mean_ms,speedup,result"),
            std::string::npos);
}

TEST(Cli, SummarySpeedupIsRatioOfPrintedMeans) {
  const auto r = sh(cli_cmd("run --kernel matmul --size 16 --iters 200 --seed 1 " + kProfile));
  ASSERT_EQ(r.code, 0);
  const auto at = r.out.find("kernel,final_target,");
  ASSERT_NE(at, std::string::npos);
  std::istringstream in(r.out.substr(at));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  std::vector<std::string> f;
  std::istringstream rs(row);
  for (std::string x; std::getline(rs, x, ',');) f.push_back(x);
  ASSERT_GE(f.size(), 5U);
  EXPECT_EQ(f[1], "sim");
  const double local = std::stod(f[2]), remote = std::stod(f[3]), speedup = std::stod(f[4]);
  EXPECT_EQ(speedup, local / remote);
  EXPECT_NEAR(speedup, 31.9, 0.05 * 31.9);
  // The same means appear in the stats section.
  EXPECT_NE(r.out.find("matmul,local,17," + f[2] + ","), std::string::npos);
  EXPECT_NE(r.out.find("matmul,sim,177," + f[3] + ","), std::string::npos);
}

TEST(Cli, MatmulTraceHasNoFurtherRebinds) {
  const auto r = sh(cli_cmd("trace --kernel matmul --size 4 --iters 10000 " + kProfile));
  ASSERT_EQ(r.code, 0);
  std::vector<std::string> rows;
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);) rows.push_back(l);
  ASSERT_EQ(rows.size(), 3U) << r.out;
  EXPECT_NE(rows[1].find(",matmul,offload,sim,"), std::string::npos);
  EXPECT_NE(rows[2].find(",matmul,commit,sim,"), std::string::npos);

  const auto fft = sh(cli_cmd("trace --kernel fft --size 64 --iters 200 " + kProfile));
  EXPECT_NE(fft.out.find(",fft,offload,sim,"), std::string::npos);
  EXPECT_NE(fft.out.find(",fft,revert,sim,"), std::string::npos);
}

TEST(Cli, TraceIsByteIdenticalForASeed) {
  const std::string cmd = cli_cmd("trace --kernel pattern --size 64 --iters 150 " + kProfile);
  const auto a = sh(cmd + " --seed 7");
  const auto b = sh(cmd + " --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  const auto env = sh("VPE_SEED=7 " + cmd);
  EXPECT_EQ(env.out, a.out);
  const auto def = sh("env -u VPE_SEED " + cmd);
  const auto one = sh(cmd + " --seed 1");
  EXPECT_EQ(def.out, one.out);
  EXPECT_NE(def.out, a.out);
  EXPECT_EQ(sh("VPE_SEED=abc " + cmd).code, cli::kExitBadConfig);
}

TEST(Cli, JsonOutput) {
  const auto r = sh(cli_cmd("run --kernel dot --size 100 --iters 40 --out json " + kProfile));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kernel"], "dot");
  EXPECT_EQ(j["durations_ms"].size(), 40U);
  EXPECT_TRUE(j["trace"].is_array());
  EXPECT_TRUE(j["stats"].is_array());
}

TEST(Cli, FixedArgsLocalOnly) {
  const auto r = sh(cli_cmd("run --kernel dot --mode local-only --iters 2 --args '[[1,2,3],[4,5,6]]' " +
                        kProfile));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("I64 32"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(sh(cli_cmd("run --kernel nosuch " + kProfile)).code, cli::kExitBadConfig);
  EXPECT_EQ(sh(cli_cmd("run --kernel dot --iters 0 " + kProfile)).code, cli::kExitBadConfig);
  EXPECT_EQ(sh(cli_cmd("run --kernel dot --mode sideways " + kProfile)).code, cli::kExitBadConfig);
  EXPECT_EQ(sh(cli_cmd("run --kernel dot --profile /nonexistent.json")).code, cli::kExitBadConfig);
  EXPECT_EQ(sh(cli_cmd("run --kernel dot --args '[[1,2],[3]]' " + kProfile)).code, cli::kExitBadConfig);
  EXPECT_EQ(sh(cli_cmd("run --bogus-flag")).code, cli::kExitBadConfig);
  EXPECT_EQ(sh(cli_cmd("")).code, cli::kExitBadConfig);
}

TEST(Cli, UnreachableWorkerExitsThree) {
  EXPECT_EQ(sh(cli_cmd("run --kernel dot --iters 2 --target worker --mode force-remote "
                   "--endpoint 127.0.0.1:1")).code,
            cli::kExitWorkerUnreachable);
}

TEST(Cli, SpawnedWorkerRun) {
  const auto r = sh(cli_cmd("run --kernel complement --size 1000 --iters 4 --target worker "
                        "--mode force-remote --worker-exe '" VPE_TEST_WORKER_PATH "'"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(",worker,"), std::string::npos);
}

TEST(Cli, SweepReportsCrossover) {
  const auto r = sh(cli_cmd("sweep --sizes 50,100"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("model_crossover,measured_crossover"), std::string::npos);
  EXPECT_NE(r.out.find("not worth"), std::string::npos);
}

TEST(Cli, DemoFramesAndBadImageExit) {
  const auto in = oracle::make_temp_dir("cli-demo");
  const auto out = oracle::make_temp_dir("cli-demo-out");
  oracle::write_synthetic_frames(in, 25, 16, 16, 2);
  const std::string cmd = cli_cmd("demo-frames --input '" + in.string() + "' --output '" +
                              out.string() + "'");
  const auto ok = sh(cmd);
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("fps_before,fps_after,fps_ratio,transition_frame"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(out / "frame024.pgm"));
  {
    std::ofstream f(in / "frame999.pgm", std::ios::binary);
    f << "P5\n16 16\n255\n";
  }
  EXPECT_EQ(sh(cmd).code, cli::kExitBadImage);
  std::filesystem::remove_all(in);
  std::filesystem::remove_all(out);
}

TEST(WorkerCli, BindFailureExitsNonZero) {
  net::Listener taken(net::Endpoint{"127.0.0.1", 0});
  const auto r = sh(std::string("'") + VPE_TEST_WORKER_PATH + "' --listen 127.0.0.1:" +
                    std::to_string(taken.port()));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(sh(std::string("'") + VPE_TEST_WORKER_PATH + "' --listen nonsense").code, 0);
}

TEST(WorkerCli, KernelFilter) {
  remote::WorkerProcess proc(VPE_TEST_WORKER_PATH, {"--kernels", "dot"});
  remote::WorkerClient client(proc.endpoint());
  const Value args[] = {std::vector<std::int32_t>{2}, std::vector<std::int32_t>{3}};
  EXPECT_EQ(std::get<std::int64_t>(client.call(3, args)), 6);
  EXPECT_EQ(test::code_of([&] { client.call(4, args); }), Errc::RemoteUnknownKernel);
  client.shutdown();
  EXPECT_EQ(proc.wait(), 0);
}

TEST(CliSupport, ExitCodes) {
  EXPECT_EQ(cli::exit_code_for(Error(Errc::InvalidConfig, "")), 2);
  EXPECT_EQ(cli::exit_code_for(Error(Errc::UnknownKernel, "")), 2);
  EXPECT_EQ(cli::exit_code_for(Error(Errc::ArgumentMismatch, "")), 2);
  EXPECT_EQ(cli::exit_code_for(Error(Errc::Transport, "")), 3);
  EXPECT_EQ(cli::exit_code_for(Error(Errc::RemoteExecutionFailed, "")), 3);
  EXPECT_EQ(cli::exit_code_for(Error(Errc::BadImage, "")), 5);
  EXPECT_EQ(cli::exit_code_for(Error(Errc::InvalidState, "")), 4);
  EXPECT_EQ(cli::exit_code_for(std::runtime_error("x")), 4);
}

TEST(CliSupport, ParseArgsJson) {
  const auto& sig = builtin_kernel("matmul").signature;
  const auto v = cli::parse_args_json(sig, "[[[1,2],[3,4]], [[1,0],[0,1]]]");
  ASSERT_EQ(v.size(), 2U);
  EXPECT_EQ(std::get<I32Matrix>(v[0]), I32Matrix(2, 2, {1, 2, 3, 4}));
  const auto c = cli::parse_args_json(builtin_kernel("complement").signature, "[\"ACGT\"]");
  EXPECT_EQ(std::get<Bytes>(c[0]).data, "ACGT");
  const auto f = cli::parse_args_json(builtin_kernel("fft").signature, "[[100, 0, -5, 7]]");
  EXPECT_EQ(std::get<Q15Vec>(f[0]).data, (std::vector<std::int16_t>{100, 0, -5, 7}));
  for (const char* bad : {"", "{}", "[1]", "[[1],[2],[3]]", "[[[1,2],[3]], [[1]]]",
                          "[[[1.5]], [[1]]]", "[[[3000000000]], [[1]]]"}) {
    EXPECT_EQ(test::code_of([&] { cli::parse_args_json(sig, bad); }), Errc::InvalidConfig) << bad;
  }
  EXPECT_EQ(test::code_of([] { cli::parse_args_json(builtin_kernel("fft").signature, "[[1,2,3]]"); }),
            Errc::InvalidConfig);
}

TEST(CliSupport, ParseMatrixJson) {
  EXPECT_EQ(cli::parse_matrix_json("[[0,1,0],[1,-4,1],[0,1,0]]").rows, 3U);
  EXPECT_EQ(test::code_of([] { cli::parse_matrix_json("[[1,2],[3]]"); }), Errc::InvalidConfig);
}

TEST(CliSupport, ResolveSeed) {
  ::unsetenv("VPE_SEED");
  EXPECT_EQ(cli::resolve_seed(std::nullopt), 1U);
  EXPECT_EQ(cli::resolve_seed(9), 9U);
  ::setenv("VPE_SEED", "42", 1);
  EXPECT_EQ(cli::resolve_seed(std::nullopt), 42U);
  EXPECT_EQ(cli::resolve_seed(9), 9U);
  ::setenv("VPE_SEED", "-3", 1);
  EXPECT_EQ(test::code_of([] { cli::resolve_seed(std::nullopt); }), Errc::InvalidConfig);
  ::unsetenv("VPE_SEED");
}

TEST(CliSupport, ResolveProfile) {
  EXPECT_TRUE(std::filesystem::exists(cli::resolve_profile("table1.json")));
  EXPECT_TRUE(std::filesystem::exists(cli::resolve_profile("matmul_fit.json")));
}

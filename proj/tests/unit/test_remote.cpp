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

#include <array>
#include <thread>

#include "test_util.hpp"
#include "vpe/catalog.hpp"
#include "vpe/kernels.hpp"
#include "vpe/remote.hpp"
#include "vpe/workload.hpp"

using namespace vpe;
using wire::Status;

namespace {

std::vector<Value> dot_args() {
  return {std::vector<std::int32_t>{1, 2, 3}, std::vector<std::int32_t>{4, 5, 6}};
}

// Worker serving on an ephemeral port in a background thread.
class LocalWorker {
 public:
  explicit LocalWorker(std::uint32_t max_payload = wire::kDefaultMaxPayload)
      : worker_(net::Endpoint{"127.0.0.1", 0}, remote::builtin_kernel_table(), max_payload),
        thread_([this] { worker_.serve(); }) {}
  ~LocalWorker() {
    if (thread_.joinable()) {
      try {
        remote::WorkerClient(endpoint()).shutdown();
      } catch (const Error&) {
      }
      thread_.join();
    }
  }
  net::Endpoint endpoint() const { return {"127.0.0.1", worker_.port()}; }
  void join() { thread_.join(); }

 private:
  remote::Worker worker_;
  std::thread thread_;
};

wire::Response read_response(net::Socket& s) {
  std::array<std::uint8_t, wire::kResponseHeaderSize> h;
  EXPECT_TRUE(s.read_exact(h));
  wire::ByteBuffer b(h.begin(), h.end());
  b.resize(wire::kResponseHeaderSize + wire::get_u32(h.data() + 1));
  if (b.size() > wire::kResponseHeaderSize) {
    EXPECT_TRUE(s.read_exact(std::span(b).subspan(wire::kResponseHeaderSize)));
  }
  return wire::decode_response(b);
}

}  // namespace

TEST(HandleInvoke, StatusCodes) {
  const auto table = remote::builtin_kernel_table();
  const auto args = dot_args();
  const auto ok = remote::handle_invoke(table, 3, wire::marshal(args));
  ASSERT_EQ(ok.status, Status::Ok);
  const auto values = wire::unmarshal(ok.payload);
  ASSERT_EQ(values.size(), 1U);
  EXPECT_EQ(std::get<std::int64_t>(values[0]), 32);

  EXPECT_EQ(remote::handle_invoke(table, 99, wire::marshal(args)).status, Status::UnknownKernel);
  const std::uint8_t junk[] = {1, 2, 3};
  EXPECT_EQ(remote::handle_invoke(table, 3, junk).status, Status::Malformed);
  const Value wrong_kind[] = {Bytes{"A"}, Bytes{"C"}};
  EXPECT_EQ(remote::handle_invoke(table, 3, wire::marshal(wrong_kind)).status, Status::Malformed);
  const Value short_list[] = {std::vector<std::int32_t>{1}};
  EXPECT_EQ(remote::handle_invoke(table, 3, wire::marshal(short_list)).status, Status::Malformed);
  const Value mismatch[] = {std::vector<std::int32_t>{1}, std::vector<std::int32_t>{1, 2}};
  EXPECT_EQ(remote::handle_invoke(table, 3, wire::marshal(mismatch)).status,
            Status::ExecutionError);
  const Value not_dna[] = {Bytes{"ACGX"}};
  EXPECT_EQ(remote::handle_invoke(table, 1, wire::marshal(not_dna)).status, Status::ExecutionError);
}

TEST(HandleInvoke, OversizedResultIsExecutionError) {
  const auto table = remote::builtin_kernel_table();
  Rng rng(1);
  const Value args[] = {Bytes{random_dna(rng, 4096)}};
  EXPECT_EQ(remote::handle_invoke(table, 1, wire::marshal(args), 1024).status,
            Status::ExecutionError);
}

TEST(KernelTable, Filtering) {
  const auto only = remote::builtin_kernel_table({"dot", "fft"});
  EXPECT_EQ(only.size(), 2U);
  EXPECT_TRUE(only.count(3));
  EXPECT_TRUE(only.count(6));
  EXPECT_EQ(remote::builtin_kernel_table().size(), 6U);
}

TEST(Worker, ClientCallsMatchLocalResults) {
  LocalWorker w;
  remote::WorkerClient client(w.endpoint());
  client.ping();
  for (const char* name : {"matmul", "dot", "complement", "convolution", "pattern", "fft"}) {
    const CatalogEntry& e = builtin_kernel(name);
    const auto args = make_workload(name, 32, 5);
    EXPECT_EQ(client.call(e.wire_id, args), e.local(args)) << name;
  }
  EXPECT_EQ(test::code_of([&] { client.call(42, dot_args()); }), Errc::RemoteUnknownKernel);
  const Value mismatch[] = {std::vector<std::int32_t>{1}, std::vector<std::int32_t>{1, 2}};
  EXPECT_EQ(test::code_of([&] { client.call(3, mismatch); }), Errc::RemoteExecutionFailed);
  const Value wrong_kind[] = {std::int64_t{1}};
  EXPECT_EQ(test::code_of([&] { client.call(3, wrong_kind); }), Errc::RemoteMalformed);
  client.ping();  // connection survives error statuses
}

TEST(Worker, UnknownTypeAndOversizeKeepConnection) {
  LocalWorker w(64);
  net::Socket s = net::Socket::connect(w.endpoint());
  wire::ByteBuffer bad_type = wire::encode_frame({wire::MessageType::Ping, 0, {1, 2, 3}});
  bad_type[4] = 0x7F;
  s.write_all(bad_type);
  EXPECT_EQ(read_response(s).status, Status::Malformed);

  wire::ByteBuffer big = wire::encode_frame({wire::MessageType::Invoke, 3, wire::ByteBuffer(100, 0)});
  s.write_all(big);
  EXPECT_EQ(read_response(s).status, Status::Malformed);

  s.write_all(wire::encode_frame({wire::MessageType::Ping, 0, {}}));
  const auto pong = read_response(s);
  EXPECT_EQ(pong.status, Status::Ok);
  EXPECT_TRUE(pong.payload.empty());
}

TEST(Worker, BadMagicClosesConnection) {
  LocalWorker w;
  net::Socket s = net::Socket::connect(w.endpoint());
  wire::ByteBuffer f = wire::encode_frame({wire::MessageType::Ping, 0, {}});
  f[0] = 'X';
  s.write_all(f);
  std::array<std::uint8_t, 1> b;
  EXPECT_FALSE(s.read_exact(b));
  // The worker keeps accepting new connections.
  remote::WorkerClient(w.endpoint()).ping();
}

TEST(Worker, ShutdownStopsServing) {
  auto w = std::make_unique<LocalWorker>();
  const auto ep = w->endpoint();
  remote::WorkerClient(ep).shutdown();
  w->join();
  w.reset();
  EXPECT_EQ(test::code_of([&] { remote::WorkerClient(ep).ping(); }), Errc::Transport);
}

TEST(WorkerClient, UnreachableIsTransportError) {
  remote::WorkerClient client(net::Endpoint{"127.0.0.1", 1});
  EXPECT_EQ(test::code_of([&] { client.ping(); }), Errc::Transport);
}

TEST(WorkerClient, RequestOverLimitRejectedLocally) {
  remote::WorkerClient client(net::Endpoint{"127.0.0.1", 1}, 16);
  const Value big[] = {std::vector<std::int32_t>(100), std::vector<std::int32_t>(100)};
  EXPECT_EQ(test::code_of([&] { client.call(3, big); }), Errc::Transport);
}

TEST(Endpoint, Parse) {
  const auto ep = net::parse_endpoint("127.0.0.1:8080");
  EXPECT_EQ(ep.host, "127.0.0.1");
  EXPECT_EQ(ep.port, 8080);
  EXPECT_EQ(ep.to_string(), "127.0.0.1:8080");
  for (const char* bad : {"localhost", ":80", "host:", "h:99999", "h:8x"}) {
    EXPECT_EQ(test::code_of([&] { net::parse_endpoint(bad); }), Errc::InvalidConfig) << bad;
  }
}

TEST(WorkerProcess, SpawnCallShutdown) {
  remote::WorkerProcess proc(VPE_TEST_WORKER_PATH);
  auto client = std::make_shared<remote::SharedWorkerClient>(proc.endpoint());
  client->ping();
  const auto impl = remote::remote_implementation(client, 4);
  const auto args = make_workload("matmul", 24, 3);
  EXPECT_EQ(impl(args), builtin_kernel("matmul").local(args));
  client->shutdown();
  EXPECT_EQ(proc.wait(), 0);
}

TEST(WorkerProcess, MissingExecutableFails) {
  EXPECT_EQ(test::code_of([] { remote::WorkerProcess p("/nonexistent/vpe-worker"); }),
            Errc::Transport);
}

TEST(RemoteTarget, RegistryInvocationThroughWorker) {
  LocalWorker w;
  auto client = std::make_shared<remote::SharedWorkerClient>(w.endpoint());
  const CatalogEntry& e = builtin_kernel("dot");
  Registry r;
  const KernelId id = r.register_kernel(
      e.name, e.signature,
      {{kLocalTarget, e.local}, {kWorkerTarget, remote::remote_implementation(client, e.wire_id)}},
      e.check);
  r.rebind(id, kWorkerTarget);
  const auto args = dot_args();
  auto [v, rec] = r.invoke(id, args, {});
  EXPECT_EQ(std::get<std::int64_t>(v), 32);
  EXPECT_EQ(rec.target, kWorkerTarget);
}

TEST(Worker, ThousandSequentialInvokesAnswerInOrder) {
  LocalWorker w;
  remote::WorkerClient client(w.endpoint());
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 64));
    const auto a = random_i32_vec(rng, n, 1 << 15);
    const auto b = random_i32_vec(rng, n, 1 << 15);
    const Value args[] = {a, b};
    ASSERT_EQ(std::get<std::int64_t>(client.call(3, args)), kernels::dot(a, b)) << "call " << i;
  }
}

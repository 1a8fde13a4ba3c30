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

#include <sys/types.h>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vpe/registry.hpp"
#include "vpe/socket.hpp"
#include "vpe/wire.hpp"

namespace vpe::remote {

struct WorkerKernel {
  std::string name;
  Signature signature;
  Implementation impl;
  ArgumentCheck check;
};

/// Wire kernel id -> implementation.
using KernelTable = std::map<std::uint32_t, WorkerKernel>;

/// Built-in kernels keyed by their wire ids. A non-empty `only` restricts
/// the table to those kernel names.
KernelTable builtin_kernel_table(const std::vector<std::string>& only = {});

/// Serves one invoke request: status 1 for an unknown id, 3 when the
/// payload is not a valid argument list for the kernel, 2 when the kernel
/// rejects the arguments or fails.
wire::Response handle_invoke(const KernelTable& table, std::uint32_t kernel_id,
                             std::span<const std::uint8_t> payload,
                             std::uint32_t max_payload = wire::kDefaultMaxPayload);

/// Sequential request/response server. One connection at a time.
class Worker {
 public:
  Worker(const net::Endpoint& listen, KernelTable table,
         std::uint32_t max_payload = wire::kDefaultMaxPayload);

  std::uint16_t port() const { return listener_.port(); }

  /// Accept loop; returns after answering a shutdown frame.
  void serve();

 private:
  /// Returns true when a shutdown frame was handled.
  bool serve_connection(net::Socket& conn);

  net::Listener listener_;
  KernelTable table_;
  std::uint32_t max_payload_;
};

/// Client side of one worker connection. Not thread-safe; see
/// SharedWorkerClient. Reconnects lazily after a transport failure.
class WorkerClient {
 public:
  explicit WorkerClient(net::Endpoint endpoint,
                        std::uint32_t max_payload = wire::kDefaultMaxPayload);

  const net::Endpoint& endpoint() const { return endpoint_; }

  /// Writes one frame and reads exactly one response. Throws Error(Transport).
  wire::Response exchange(const wire::Frame& frame);

  /// Invokes a kernel; status 1/2/3 map to Errc::RemoteUnknownKernel,
  /// RemoteExecutionFailed and RemoteMalformed.
  Value call(std::uint32_t kernel_id, Args args);
  void ping();
  void shutdown();

 private:
  net::Socket& connection();

  net::Endpoint endpoint_;
  std::uint32_t max_payload_;
  net::Socket socket_;
};

/// Mutex-serialized client usable from several invocation threads.
class SharedWorkerClient {
 public:
  explicit SharedWorkerClient(net::Endpoint endpoint,
                              std::uint32_t max_payload = wire::kDefaultMaxPayload)
      : client_(std::move(endpoint), max_payload) {}

  Value call(std::uint32_t kernel_id, Args args);
  void ping();
  void shutdown();

 private:
  std::mutex mu_;
  WorkerClient client_;
};

/// Value execute_remote(kernel, args, endpoint) as a registry implementation.
Implementation remote_implementation(std::shared_ptr<SharedWorkerClient> client,
                                     std::uint32_t wire_id);

/// A vpe-worker child process bound to an ephemeral localhost port.
class WorkerProcess {
 public:
  /// Spawns `executable --listen 127.0.0.1:0` (plus extra arguments) and
  /// waits for its "listening on" line. Throws Error(Transport) on failure.
  explicit WorkerProcess(const std::filesystem::path& executable,
                         std::vector<std::string> extra_args = {});
  ~WorkerProcess();
  WorkerProcess(const WorkerProcess&) = delete;
  WorkerProcess& operator=(const WorkerProcess&) = delete;

  const net::Endpoint& endpoint() const { return endpoint_; }

  /// Blocks until the process exits; returns its exit status.
  int wait();

 private:
  pid_t pid_ = -1;
  net::Endpoint endpoint_;
  std::optional<int> exit_status_;
};

}  // namespace vpe::remote

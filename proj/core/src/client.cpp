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

#include <array>

#include "vpe/error.hpp"
#include "vpe/remote.hpp"

namespace vpe::remote {

WorkerClient::WorkerClient(net::Endpoint endpoint, std::uint32_t max_payload)
    : endpoint_(std::move(endpoint)), max_payload_(max_payload) {}

net::Socket& WorkerClient::connection() {
  if (!socket_.valid()) socket_ = net::Socket::connect(endpoint_);
  return socket_;
}

wire::Response WorkerClient::exchange(const wire::Frame& frame) {
  if (frame.payload.size() > max_payload_) {
    throw Error(Errc::Transport, "request payload of " + std::to_string(frame.payload.size()) +
                                     " bytes exceeds the frame limit");
  }
  try {
    net::Socket& s = connection();
    s.write_all(wire::encode_frame(frame));
    std::array<std::uint8_t, wire::kResponseHeaderSize> header;
    if (!s.read_exact(header)) throw Error(Errc::Transport, "worker closed the connection");
    const std::uint32_t len = wire::get_u32(header.data() + 1);
    if (len > max_payload_) throw Error(Errc::Transport, "response exceeds the frame limit");
    wire::ByteBuffer bytes(header.begin(), header.end());
    bytes.resize(wire::kResponseHeaderSize + len);
    if (len > 0 && !s.read_exact(std::span(bytes).subspan(wire::kResponseHeaderSize))) {
      throw Error(Errc::Transport, "worker closed the connection");
    }
    try {
      return wire::decode_response(bytes, max_payload_);
    } catch (const Error& e) {
      throw Error(Errc::Transport, std::string("bad response: ") + e.what());
    }
  } catch (const Error& e) {
    if (e.code() == Errc::Transport) socket_.close();
    throw;
  }
}

Value WorkerClient::call(std::uint32_t kernel_id, Args args) {
  const wire::Response r = exchange({wire::MessageType::Invoke, kernel_id, wire::marshal(args)});
  switch (r.status) {
    case wire::Status::Ok: break;
    case wire::Status::UnknownKernel:
      throw Error(Errc::RemoteUnknownKernel, "worker has no kernel " + std::to_string(kernel_id));
    case wire::Status::ExecutionError:
      throw Error(Errc::RemoteExecutionFailed, "kernel " + std::to_string(kernel_id));
    case wire::Status::Malformed:
      throw Error(Errc::RemoteMalformed, "kernel " + std::to_string(kernel_id));
  }
  std::vector<Value> values;
  try {
    values = wire::unmarshal(r.payload);
  } catch (const Error& e) {
    throw Error(Errc::Transport, std::string("bad result payload: ") + e.what());
  }
  if (values.size() != 1) throw Error(Errc::Transport, "result payload must hold one value");
  return std::move(values.front());
}

void WorkerClient::ping() {
  const wire::Response r = exchange({wire::MessageType::Ping, 0, {}});
  if (r.status != wire::Status::Ok) throw Error(Errc::Transport, "ping refused");
}

void WorkerClient::shutdown() {
  const wire::Response r = exchange({wire::MessageType::Shutdown, 0, {}});
  socket_.close();
  if (r.status != wire::Status::Ok) throw Error(Errc::Transport, "shutdown refused");
}

Value SharedWorkerClient::call(std::uint32_t kernel_id, Args args) {
  std::lock_guard lock(mu_);
  return client_.call(kernel_id, args);
}

void SharedWorkerClient::ping() {
  std::lock_guard lock(mu_);
  client_.ping();
}

void SharedWorkerClient::shutdown() {
  std::lock_guard lock(mu_);
  client_.shutdown();
}

Implementation remote_implementation(std::shared_ptr<SharedWorkerClient> client,
                                     std::uint32_t wire_id) {
  return [client = std::move(client), wire_id](Args args) { return client->call(wire_id, args); };
}

}  // namespace vpe::remote

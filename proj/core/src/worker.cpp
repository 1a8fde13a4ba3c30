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

#include <algorithm>
#include <array>

#include "vpe/catalog.hpp"
#include "vpe/error.hpp"
#include "vpe/remote.hpp"

namespace vpe::remote {

using wire::Response;
using wire::Status;

KernelTable builtin_kernel_table(const std::vector<std::string>& only) {
  KernelTable table;
  for (const CatalogEntry& e : builtin_kernels()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.name) == only.end()) continue;
    table.emplace(e.wire_id, WorkerKernel{e.name, e.signature, e.local, e.check});
  }
  return table;
}

Response handle_invoke(const KernelTable& table, std::uint32_t kernel_id,
                       std::span<const std::uint8_t> payload, std::uint32_t max_payload) {
  auto it = table.find(kernel_id);
  if (it == table.end()) return {Status::UnknownKernel, {}};
  const WorkerKernel& k = it->second;

  std::vector<Value> args;
  try {
    args = wire::unmarshal(payload);
  } catch (const Error&) {
    return {Status::Malformed, {}};
  }
  if (args.size() != k.signature.params.size()) return {Status::Malformed, {}};
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (kind_of(args[i]) != k.signature.params[i]) return {Status::Malformed, {}};
  }

  try {
    if (k.check) k.check(args);
    const Value result = k.impl(args);
    wire::ByteBuffer body = wire::marshal(std::span(&result, 1));
    if (body.size() > max_payload) return {Status::ExecutionError, {}};
    return {Status::Ok, std::move(body)};
  } catch (const std::exception&) {
    return {Status::ExecutionError, {}};
  }
}

Worker::Worker(const net::Endpoint& listen, KernelTable table, std::uint32_t max_payload)
    : listener_(listen), table_(std::move(table)), max_payload_(max_payload) {}

void Worker::serve() {
  for (;;) {
    net::Socket conn = listener_.accept();
    try {
      if (serve_connection(conn)) return;
    } catch (const Error&) {
      // Broken connection; wait for the next client.
    }
  }
}

bool Worker::serve_connection(net::Socket& conn) {
  std::array<std::uint8_t, wire::kFrameHeaderSize> header_bytes;
  wire::ByteBuffer payload;
  for (;;) {
    if (!conn.read_exact(header_bytes)) return false;
    wire::FrameHeader h;
    const wire::HeaderCheck check = wire::parse_frame_header(header_bytes, h, max_payload_);
    if (check == wire::HeaderCheck::BadMagic) return false;
    if (check != wire::HeaderCheck::Ok) {
      conn.discard(h.payload_len);
      conn.write_all(wire::encode_response({Status::Malformed, {}}));
      continue;
    }
    payload.resize(h.payload_len);
    if (h.payload_len > 0 && !conn.read_exact(payload)) {
      throw Error(Errc::Transport, "connection closed mid-message");
    }

    switch (static_cast<wire::MessageType>(h.type)) {
      case wire::MessageType::Invoke:
        conn.write_all(wire::encode_response(handle_invoke(table_, h.kernel_id, payload,
                                                           max_payload_)));
        break;
      case wire::MessageType::Ping:
        conn.write_all(wire::encode_response({Status::Ok, {}}));
        break;
      case wire::MessageType::Shutdown:
        conn.write_all(wire::encode_response({Status::Ok, {}}));
        conn.close();
        return true;
    }
  }
}

}  // namespace vpe::remote

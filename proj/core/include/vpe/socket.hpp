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
#include <span>
#include <string>

namespace vpe::net {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  std::string to_string() const { return host + ":" + std::to_string(port); }
};

/// "host:port". Throws Error(InvalidConfig).
Endpoint parse_endpoint(const std::string& text);

/// Owning TCP stream socket. Failures throw Error(Transport).
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket();
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  static Socket connect(const Endpoint& endpoint);

  bool valid() const { return fd_ >= 0; }
  void close();

  void write_all(std::span<const std::uint8_t> bytes);
  /// Fills `out` completely. Returns false on a clean end of stream before
  /// the first byte; throws on a short read after that.
  bool read_exact(std::span<std::uint8_t> out);
  /// Reads and drops `n` bytes in bounded chunks.
  void discard(std::uint64_t n);

 private:
  int fd_ = -1;
};

class Listener {
 public:
  /// Port 0 picks an ephemeral port; see port().
  explicit Listener(const Endpoint& endpoint);
  ~Listener();
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;

  std::uint16_t port() const { return port_; }
  Socket accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace vpe::net

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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vpe/value.hpp"

/// Worker wire protocol. All integers are little-endian, fixed width.
///
///   request:  "VPE1" | type u8 | kernel_id u32 | payload_len u32 | payload
///   response: status u8 | payload_len u32 | payload
///
/// Invoke payloads are marshal(args); an ok response carries
/// marshal({result}). Non-zero statuses carry no payload.
namespace vpe::wire {

using ByteBuffer = std::vector<std::uint8_t>;

inline constexpr std::array<std::uint8_t, 4> kMagic{0x56, 0x50, 0x45, 0x31};
inline constexpr std::size_t kFrameHeaderSize = 13;
inline constexpr std::size_t kResponseHeaderSize = 5;
inline constexpr std::uint32_t kDefaultMaxPayload = 1U << 20;

enum class MessageType : std::uint8_t { Invoke = 0x01, Ping = 0x02, Shutdown = 0x03 };

enum class Status : std::uint8_t {
  Ok = 0,
  UnknownKernel = 1,
  ExecutionError = 2,
  Malformed = 3,
};

struct Frame {
  MessageType type = MessageType::Ping;
  std::uint32_t kernel_id = 0;
  ByteBuffer payload;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct Response {
  Status status = Status::Ok;
  ByteBuffer payload;

  friend bool operator==(const Response&, const Response&) = default;
};

struct FrameHeader {
  std::uint8_t type = 0;
  std::uint32_t kernel_id = 0;
  std::uint32_t payload_len = 0;
};

enum class HeaderCheck { Ok, BadMagic, UnknownType, Oversize };

/// Parses the fixed 13-byte request header. The fields are filled even when
/// the result is UnknownType or Oversize so the caller can skip the payload.
HeaderCheck parse_frame_header(std::span<const std::uint8_t, kFrameHeaderSize> bytes,
                               FrameHeader& header, std::uint32_t max_payload);

ByteBuffer encode_frame(const Frame& frame);
/// Decodes exactly one frame occupying all of `bytes`. Throws Error(Malformed).
Frame decode_frame(std::span<const std::uint8_t> bytes,
                   std::uint32_t max_payload = kDefaultMaxPayload);

/// A non-ok response is encoded with an empty payload.
ByteBuffer encode_response(const Response& response);
Response decode_response(std::span<const std::uint8_t> bytes,
                         std::uint32_t max_payload = kDefaultMaxPayload);

/// u32 value count followed by each value: tag u8, kind header, body.
ByteBuffer marshal(Args values);
/// Exact inverse of marshal. Throws Error(Malformed) on truncated, overlong
/// or unknown-tag input; never allocates more than the input can describe.
std::vector<Value> unmarshal(std::span<const std::uint8_t> bytes);

void put_u32(ByteBuffer& out, std::uint32_t v);
std::uint32_t get_u32(const std::uint8_t* p);

}  // namespace vpe::wire

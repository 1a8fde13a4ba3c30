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

#include "vpe/wire.hpp"

#include <algorithm>
#include <type_traits>

#include "vpe/error.hpp"

namespace vpe::wire {

void put_u32(ByteBuffer& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

namespace {

template <typename T>
void put_le(ByteBuffer& out, T v) {
  using U = std::make_unsigned_t<T>;
  const U u = static_cast<U>(v);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

void put_count(ByteBuffer& out, std::size_t n) {
  if (n > UINT32_MAX) throw Error(Errc::Malformed, "length does not fit in u32");
  put_u32(out, static_cast<std::uint32_t>(n));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  void need(std::uint64_t n, const char* what) const {
    if (n > remaining()) {
      throw Error(Errc::Malformed, std::string("truncated ") + what);
    }
  }

  std::uint8_t u8(const char* what) {
    need(1, what);
    return bytes_[pos_++];
  }

  std::uint32_t u32(const char* what) {
    need(4, what);
    const std::uint32_t v = get_u32(bytes_.data() + pos_);
    pos_ += 4;
    return v;
  }

  template <typename T>
  T le(const char* what) {
    need(sizeof(T), what);
    using U = std::make_unsigned_t<T>;
    U u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<U>(bytes_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(u);
  }

  template <typename T>
  std::vector<T> array(std::uint64_t count, const char* what) {
    if (count > remaining() / sizeof(T)) {
      throw Error(Errc::Malformed, std::string("truncated ") + what);
    }
    std::vector<T> out(count);
    for (auto& x : out) x = le<T>(what);
    return out;
  }

  std::span<const std::uint8_t> raw(std::uint64_t n, const char* what) {
    need(n, what);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void marshal_value(ByteBuffer& out, const Value& value) {
  out.push_back(static_cast<std::uint8_t>(kind_of(value)));
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          put_le(out, v);
        } else if constexpr (std::is_same_v<T, Bytes>) {
          put_count(out, v.data.size());
          out.insert(out.end(), v.data.begin(), v.data.end());
        } else if constexpr (std::is_same_v<T, std::vector<std::int32_t>>) {
          put_count(out, v.size());
          for (auto x : v) put_le(out, x);
        } else if constexpr (std::is_same_v<T, Q15Vec>) {
          if (v.data.size() % 2 != 0) throw Error(Errc::Malformed, "odd Q15 vector length");
          put_count(out, v.complex_size());
          for (auto x : v.data) put_le(out, x);
        } else {
          if (v.data.size() != static_cast<std::size_t>(v.rows) * v.cols) {
            throw Error(Errc::Malformed, "matrix element count != rows*cols");
          }
          put_u32(out, v.rows);
          put_u32(out, v.cols);
          for (auto x : v.data) put_le(out, x);
        }
      },
      value);
}

Value unmarshal_value(Reader& in) {
  const std::uint8_t tag = in.u8("value tag");
  switch (static_cast<ValueKind>(tag)) {
    case ValueKind::I64:
      return in.le<std::int64_t>("I64");
    case ValueKind::Bytes: {
      const std::uint32_t n = in.u32("Bytes length");
      auto raw = in.raw(n, "Bytes body");
      return Bytes{std::string(raw.begin(), raw.end())};
    }
    case ValueKind::I32Vec: {
      const std::uint32_t n = in.u32("I32Vec length");
      return in.array<std::int32_t>(n, "I32Vec body");
    }
    case ValueKind::I32Mat: {
      const std::uint32_t rows = in.u32("I32Mat rows");
      const std::uint32_t cols = in.u32("I32Mat cols");
      return I32Matrix(rows, cols,
                       in.array<std::int32_t>(static_cast<std::uint64_t>(rows) * cols, "I32Mat body"));
    }
    case ValueKind::I64Mat: {
      const std::uint32_t rows = in.u32("I64Mat rows");
      const std::uint32_t cols = in.u32("I64Mat cols");
      return I64Matrix(rows, cols,
                       in.array<std::int64_t>(static_cast<std::uint64_t>(rows) * cols, "I64Mat body"));
    }
    case ValueKind::Q15ComplexVec: {
      const std::uint32_t pairs = in.u32("Q15 length");
      return Q15Vec{in.array<std::int16_t>(2ULL * pairs, "Q15 body")};
    }
  }
  throw Error(Errc::Malformed, "unknown value tag " + std::to_string(tag));
}

bool known_type(std::uint8_t t) { return t >= 0x01 && t <= 0x03; }

}  // namespace

ByteBuffer marshal(Args values) {
  ByteBuffer out;
  put_count(out, values.size());
  for (const Value& v : values) marshal_value(out, v);
  return out;
}

std::vector<Value> unmarshal(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const std::uint32_t count = in.u32("value count");
  // Every value occupies at least one byte.
  in.need(count, "value list");
  std::vector<Value> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) out.push_back(unmarshal_value(in));
  if (in.remaining() != 0) {
    throw Error(Errc::Malformed, std::to_string(in.remaining()) + " trailing bytes");
  }
  return out;
}

HeaderCheck parse_frame_header(std::span<const std::uint8_t, kFrameHeaderSize> bytes,
                               FrameHeader& header, std::uint32_t max_payload) {
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) return HeaderCheck::BadMagic;
  header.type = bytes[4];
  header.kernel_id = get_u32(bytes.data() + 5);
  header.payload_len = get_u32(bytes.data() + 9);
  if (!known_type(header.type)) return HeaderCheck::UnknownType;
  if (header.payload_len > max_payload) return HeaderCheck::Oversize;
  return HeaderCheck::Ok;
}

ByteBuffer encode_frame(const Frame& frame) {
  ByteBuffer out(kMagic.begin(), kMagic.end());
  out.push_back(static_cast<std::uint8_t>(frame.type));
  put_u32(out, frame.kernel_id);
  put_count(out, frame.payload.size());
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

Frame decode_frame(std::span<const std::uint8_t> bytes, std::uint32_t max_payload) {
  if (bytes.size() < kFrameHeaderSize) throw Error(Errc::Malformed, "truncated frame header");
  FrameHeader h;
  switch (parse_frame_header(bytes.first<kFrameHeaderSize>(), h, max_payload)) {
    case HeaderCheck::Ok: break;
    case HeaderCheck::BadMagic: throw Error(Errc::Malformed, "bad frame magic");
    case HeaderCheck::UnknownType:
      throw Error(Errc::Malformed, "unknown message type " + std::to_string(h.type));
    case HeaderCheck::Oversize:
      throw Error(Errc::Malformed, "payload of " + std::to_string(h.payload_len) +
                                       " bytes exceeds limit");
  }
  if (bytes.size() - kFrameHeaderSize != h.payload_len) {
    throw Error(Errc::Malformed, "payload_len does not match frame size");
  }
  Frame f;
  f.type = static_cast<MessageType>(h.type);
  f.kernel_id = h.kernel_id;
  f.payload.assign(bytes.begin() + kFrameHeaderSize, bytes.end());
  return f;
}

ByteBuffer encode_response(const Response& response) {
  ByteBuffer out;
  out.push_back(static_cast<std::uint8_t>(response.status));
  if (response.status != Status::Ok) {
    put_u32(out, 0);
    return out;
  }
  put_count(out, response.payload.size());
  out.insert(out.end(), response.payload.begin(), response.payload.end());
  return out;
}

Response decode_response(std::span<const std::uint8_t> bytes, std::uint32_t max_payload) {
  if (bytes.size() < kResponseHeaderSize) {
    throw Error(Errc::Malformed, "truncated response header");
  }
  const std::uint8_t status = bytes[0];
  if (status > 3) throw Error(Errc::Malformed, "unknown status " + std::to_string(status));
  const std::uint32_t len = get_u32(bytes.data() + 1);
  if (len > max_payload) throw Error(Errc::Malformed, "response payload exceeds limit");
  if (status != 0 && len != 0) throw Error(Errc::Malformed, "error response with payload");
  if (bytes.size() - kResponseHeaderSize != len) {
    throw Error(Errc::Malformed, "payload_len does not match response size");
  }
  return Response{static_cast<Status>(status),
                  ByteBuffer(bytes.begin() + kResponseHeaderSize, bytes.end())};
}

}  // namespace vpe::wire

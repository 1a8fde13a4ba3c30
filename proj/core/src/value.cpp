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

#include "vpe/value.hpp"

#include <cstdio>
#include <cstring>
#include <type_traits>

namespace vpe {

namespace {

// FNV-1a over the element bytes; only used for compact result summaries.
class Fnv1a {
 public:
  void add(const void* bytes, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

template <typename T>
std::uint64_t fingerprint(const std::vector<T>& v) {
  Fnv1a h;
  if (!v.empty()) h.add(v.data(), v.size() * sizeof(T));
  return h.value();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::I64: return "I64";
    case ValueKind::Bytes: return "Bytes";
    case ValueKind::I32Vec: return "I32Vec";
    case ValueKind::I32Mat: return "I32Mat";
    case ValueKind::I64Mat: return "I64Mat";
    case ValueKind::Q15ComplexVec: return "Q15ComplexVec";
  }
  return "?";
}

ValueKind kind_of(const Value& value) {
  return static_cast<ValueKind>(value.index() + 1);
}

bool is_well_formed(const Value& value) {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, I32Matrix> || std::is_same_v<T, I64Matrix>) {
          return v.data.size() == static_cast<std::size_t>(v.rows) * v.cols;
        } else if constexpr (std::is_same_v<T, Q15Vec>) {
          return v.data.size() % 2 == 0;
        } else {
          return true;
        }
      },
      value);
}

std::string describe(const Value& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return "I64 " + std::to_string(v);
        } else if constexpr (std::is_same_v<T, Bytes>) {
          Fnv1a h;
          h.add(v.data.data(), v.data.size());
          if (v.data.size() <= 32) return "Bytes \"" + v.data + "\"";
          return "Bytes len=" + std::to_string(v.data.size()) + " fnv=" + hex64(h.value());
        } else if constexpr (std::is_same_v<T, std::vector<std::int32_t>>) {
          return "I32Vec len=" + std::to_string(v.size()) + " fnv=" + hex64(fingerprint(v));
        } else if constexpr (std::is_same_v<T, Q15Vec>) {
          return "Q15ComplexVec len=" + std::to_string(v.complex_size()) +
                 " fnv=" + hex64(fingerprint(v.data));
        } else {
          return std::string(std::is_same_v<T, I32Matrix> ? "I32Mat " : "I64Mat ") +
                 std::to_string(v.rows) + "x" + std::to_string(v.cols) +
                 " fnv=" + hex64(fingerprint(v.data));
        }
      },
      value);
}

}  // namespace vpe

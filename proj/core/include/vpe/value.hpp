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
#include <string_view>
#include <variant>
#include <vector>

namespace vpe {

/// Kind tags double as the on-wire value codes.
enum class ValueKind : std::uint8_t {
  I64 = 1,
  Bytes = 2,
  I32Vec = 3,
  I32Mat = 4,
  I64Mat = 5,
  Q15ComplexVec = 6,
};

std::string_view to_string(ValueKind kind);

struct Bytes {
  std::string data;

  friend bool operator==(const Bytes&, const Bytes&) = default;
};

/// Row-major dense matrix. `data.size() == rows * cols` for a well-formed value.
template <typename T>
struct Matrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::uint32_t r, std::uint32_t c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Matrix(std::uint32_t r, std::uint32_t c, std::vector<T> values)
      : rows(r), cols(c), data(std::move(values)) {}

  T& operator()(std::uint32_t r, std::uint32_t c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  const T& operator()(std::uint32_t r, std::uint32_t c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using I32Matrix = Matrix<std::int32_t>;
using I64Matrix = Matrix<std::int64_t>;

/// Interleaved re/im Q15 samples; `data.size()` is even.
struct Q15Vec {
  std::vector<std::int16_t> data;

  std::size_t complex_size() const { return data.size() / 2; }

  friend bool operator==(const Q15Vec&, const Q15Vec&) = default;
};

// Alternative order matches ValueKind codes minus one.
using Value = std::variant<std::int64_t, Bytes, std::vector<std::int32_t>, I32Matrix,
                           I64Matrix, Q15Vec>;

using Args = std::span<const Value>;

ValueKind kind_of(const Value& value);

/// Shape invariants: matrix element count equals rows*cols, Q15 length is even.
bool is_well_formed(const Value& value);

/// Short human-readable description, e.g. "I64 32" or "I64Mat 4x4 fnv=...".
std::string describe(const Value& value);

}  // namespace vpe

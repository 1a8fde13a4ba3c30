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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vpe/value.hpp"

/// Binary 8-bit greymap (P5) files.
namespace vpe::pgm {

struct Image {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, width * height

  friend bool operator==(const Image&, const Image&) = default;
};

/// Parses a P5 file image. Header comments are skipped; maxval must be in
/// [1, 255]. Throws Error(BadImage) whose message starts with `name`.
Image parse(std::string_view bytes, std::string_view name = "<memory>");
Image read(const std::filesystem::path& path);

/// Pixel values are kept as stored. Always written with maxval 255.
std::string encode(const Image& image);
void write(const std::filesystem::path& path, const Image& image);

I32Matrix to_matrix(const Image& image);
/// Clamps every element to [0, 255].
Image from_matrix_clamped(const I64Matrix& m);

}  // namespace vpe::pgm

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

#include "vpe/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "vpe/error.hpp"

namespace vpe::pgm {

namespace {

class HeaderReader {
 public:
  HeaderReader(std::string_view bytes, std::string_view name) : b_(bytes), name_(name) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::BadImage, std::string(name_) + ": " + what);
  }

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      const char c = b_[pos_];
      if (c == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::uint32_t number(const char* field) {
    skip_space_and_comments();
    std::uint64_t v = 0;
    std::size_t digits = 0;
    while (pos_ < b_.size() && std::isdigit(static_cast<unsigned char>(b_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(b_[pos_] - '0');
      if (v > 0xFFFFFFFFULL) fail(std::string(field) + " out of range");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail(std::string("missing ") + field);
    return static_cast<std::uint32_t>(v);
  }

  void magic() {
    if (b_.size() < 2 || b_[0] != 'P' || b_[1] != '5') fail("not a binary PGM (P5) file");
    pos_ = 2;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void raster_separator() {
    if (pos_ >= b_.size() || !std::isspace(static_cast<unsigned char>(b_[pos_]))) {
      fail("missing whitespace before raster");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  std::string_view b_;
  std::string_view name_;
  std::size_t pos_ = 0;
};

}  // namespace

Image parse(std::string_view bytes, std::string_view name) {
  HeaderReader r(bytes, name);
  r.magic();
  Image img;
  img.width = r.number("width");
  img.height = r.number("height");
  const std::uint32_t maxval = r.number("maxval");
  if (img.width == 0 || img.height == 0) r.fail("zero dimension");
  if (maxval == 0 || maxval > 255) r.fail("maxval " + std::to_string(maxval) + " is not 8-bit");
  r.raster_separator();
  const std::uint64_t n = static_cast<std::uint64_t>(img.width) * img.height;
  if (bytes.size() - r.pos() < n) r.fail("truncated raster");
  img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(r.pos()),
                    bytes.begin() + static_cast<std::ptrdiff_t>(r.pos() + n));
  for (const std::uint8_t p : img.pixels) {
    if (p > maxval) r.fail("pixel exceeds maxval");
  }
  return img;
}

Image read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadImage, path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

std::string encode(const Image& image) {
  if (image.pixels.size() != static_cast<std::size_t>(image.width) * image.height) {
    throw Error(Errc::InvalidState, "image buffer does not match its dimensions");
  }
  std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n255\n";
  out.append(image.pixels.begin(), image.pixels.end());
  return out;
}

void write(const std::filesystem::path& path, const Image& image) {
  const std::string bytes = encode(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, path.string() + ": cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::Io, path.string() + ": write failed");
}

I32Matrix to_matrix(const Image& image) {
  I32Matrix m;
  m.rows = image.height;
  m.cols = image.width;
  m.data.assign(image.pixels.begin(), image.pixels.end());
  return m;
}

Image from_matrix_clamped(const I64Matrix& m) {
  Image img;
  img.width = m.cols;
  img.height = m.rows;
  img.pixels.resize(m.data.size());
  std::transform(m.data.begin(), m.data.end(), img.pixels.begin(), [](std::int64_t v) {
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(v, 0, 255));
  });
  return img;
}

}  // namespace vpe::pgm

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

#include "vpe/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "vpe/error.hpp"

namespace vpe::kernels {

namespace {

constexpr std::array<char, 256> make_complement_table() {
  std::array<char, 256> t{};
  t['A'] = 'T';
  t['T'] = 'A';
  t['C'] = 'G';
  t['G'] = 'C';
  return t;
}

constexpr auto kComplement = make_complement_table();

void check_bounded(const I32Matrix& m, const char* what) {
  if (m.data.size() != static_cast<std::size_t>(m.rows) * m.cols) {
    throw Error(Errc::ArgumentMismatch, std::string(what) + " element count != rows*cols");
  }
  for (std::int32_t v : m.data) {
    if (v > kMatrixElementBound || v < -kMatrixElementBound) {
      throw Error(Errc::ArgumentMismatch,
                  std::string(what) + " element " + std::to_string(v) + " exceeds 2^15");
    }
  }
}

}  // namespace

bool is_dna(std::string_view sequence) {
  return std::all_of(sequence.begin(), sequence.end(), [](char c) {
    return kComplement[static_cast<unsigned char>(c)] != 0;
  });
}

std::string complement(std::string_view sequence) {
  std::string out(sequence.size(), '\0');
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const char c = kComplement[static_cast<unsigned char>(sequence[i])];
    if (c == 0) {
      throw Error(Errc::ArgumentMismatch,
                  "invalid nucleotide at position " + std::to_string(i));
    }
    out[i] = c;
  }
  return out;
}

I64Matrix convolve2d(const I32Matrix& input, const I32Matrix& kernel) {
  check_bounded(input, "convolution input");
  check_bounded(kernel, "convolution kernel");
  if (kernel.rows != kernel.cols) {
    throw Error(Errc::ArgumentMismatch, "convolution kernel must be square");
  }
  const std::uint32_t k = kernel.rows;
  if (k == 0 || k % 2 == 0) {
    throw Error(Errc::ArgumentMismatch, "convolution kernel size must be odd");
  }
  if (k > input.rows || k > input.cols) {
    throw Error(Errc::ArgumentMismatch, "convolution kernel larger than input");
  }
  const std::uint32_t out_rows = input.rows - k + 1;
  const std::uint32_t out_cols = input.cols - k + 1;
  I64Matrix out(out_rows, out_cols);
  for (std::uint32_t i = 0; i < out_rows; ++i) {
    std::int64_t* row = &out.data[static_cast<std::size_t>(i) * out_cols];
    for (std::uint32_t a = 0; a < k; ++a) {
      const std::int32_t* in_row = &input.data[static_cast<std::size_t>(i + a) * input.cols];
      for (std::uint32_t b = 0; b < k; ++b) {
        const std::int64_t w = kernel(a, b);
        const std::int32_t* src = in_row + b;
        for (std::uint32_t j = 0; j < out_cols; ++j) row[j] += w * src[j];
      }
    }
  }
  return out;
}

std::int64_t dot(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size()) {
    throw Error(Errc::ArgumentMismatch, "dot length mismatch: " + std::to_string(a.size()) +
                                            " vs " + std::to_string(b.size()));
  }
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<std::uint64_t>(static_cast<std::int64_t>(a[i]) * b[i]);
  }
  return static_cast<std::int64_t>(acc);
}

I64Matrix matmul(const I32Matrix& a, const I32Matrix& b) {
  check_bounded(a, "matmul lhs");
  check_bounded(b, "matmul rhs");
  if (a.cols != b.rows) {
    throw Error(Errc::ArgumentMismatch, "matmul inner dimensions differ: " +
                                            std::to_string(a.cols) + " vs " +
                                            std::to_string(b.rows));
  }
  I64Matrix out(a.rows, b.cols);
  for (std::uint32_t i = 0; i < a.rows; ++i) {
    std::int64_t* row = &out.data[static_cast<std::size_t>(i) * b.cols];
    for (std::uint32_t k = 0; k < a.cols; ++k) {
      const std::int64_t lhs = a(i, k);
      const std::int32_t* rhs = &b.data[static_cast<std::size_t>(k) * b.cols];
      for (std::uint32_t j = 0; j < b.cols; ++j) row[j] += lhs * rhs[j];
    }
  }
  return out;
}

std::int64_t pattern_count(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) throw Error(Errc::ArgumentMismatch, "empty pattern");
  if (!is_dna(haystack) || !is_dna(needle)) {
    throw Error(Errc::ArgumentMismatch, "pattern search over non-DNA input");
  }
  std::int64_t count = 0;
  for (std::size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++count;
  }
  return count;
}

namespace q15 {

std::int64_t round_shift(std::int64_t value, unsigned shift) {
  if (shift == 0) return value;
  const std::int64_t half = std::int64_t{1} << (shift - 1);
  if (value >= 0) return (value + half) >> shift;
  return -((-value + half) >> shift);
}

std::int16_t saturate(std::int64_t value) {
  return static_cast<std::int16_t>(std::clamp<std::int64_t>(value, -32768, 32767));
}

std::int16_t from_double(double x) {
  return saturate(static_cast<std::int64_t>(std::llround(x * 32768.0)));
}

std::vector<std::int16_t> twiddle_table(std::size_t n) {
  std::vector<std::int16_t> table(n);  // n/2 complex entries
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    table[2 * k] = from_double(std::cos(angle));
    table[2 * k + 1] = from_double(std::sin(angle));
  }
  return table;
}

}  // namespace q15

Q15Vec fft_fixed(const Q15Vec& input) {
  if (input.data.size() % 2 != 0) {
    throw Error(Errc::ArgumentMismatch, "Q15 complex vector has odd length");
  }
  const std::size_t n = input.complex_size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw Error(Errc::ArgumentMismatch, "FFT length " + std::to_string(n) + " is not a power of two");
  }
  const unsigned log2n = static_cast<unsigned>(std::countr_zero(n));

  std::vector<std::int16_t> x(input.data.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (unsigned b = 0; b < log2n; ++b) r |= ((i >> b) & 1U) << (log2n - 1 - b);
    x[2 * r] = input.data[2 * i];
    x[2 * r + 1] = input.data[2 * i + 1];
  }

  const std::vector<std::int16_t> w = q15::twiddle_table(n);
  for (std::size_t span = 1; span < n; span <<= 1) {
    const std::size_t stride = n / (2 * span);
    for (std::size_t start = 0; start < n; start += 2 * span) {
      for (std::size_t j = 0; j < span; ++j) {
        const std::size_t top = start + j;
        const std::size_t bottom = top + span;
        const std::int64_t wr = w[2 * j * stride];
        const std::int64_t wi = w[2 * j * stride + 1];
        const std::int64_t br = x[2 * bottom];
        const std::int64_t bi = x[2 * bottom + 1];
        const std::int64_t tr = q15::round_shift(br * wr - bi * wi, 15);
        const std::int64_t ti = q15::round_shift(br * wi + bi * wr, 15);
        const std::int64_t ur = x[2 * top];
        const std::int64_t ui = x[2 * top + 1];
        x[2 * top] = q15::saturate(q15::round_shift(ur + tr, 1));
        x[2 * top + 1] = q15::saturate(q15::round_shift(ui + ti, 1));
        x[2 * bottom] = q15::saturate(q15::round_shift(ur - tr, 1));
        x[2 * bottom + 1] = q15::saturate(q15::round_shift(ui - ti, 1));
      }
    }
  }
  return Q15Vec{std::move(x)};
}

}  // namespace vpe::kernels

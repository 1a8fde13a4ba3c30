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
#include <vector>

#include "vpe/value.hpp"

/// Benchmark algorithms in integer and fixed-point form. All functions are
/// pure and throw vpe::Error(ArgumentMismatch) on precondition violations.
namespace vpe::kernels {

/// Largest magnitude allowed in IntMatrix elements. Keeps every 64-bit
/// accumulation in matmul and convolve2d overflow-free for n <= 2^17.
inline constexpr std::int32_t kMatrixElementBound = 1 << 15;

/// A<->T, C<->G over ASCII "ACGT". Any other byte is rejected.
std::string complement(std::string_view sequence);

/// Valid-mode 2D cross-correlation with a square odd-sized kernel:
/// out(i, j) = sum_{a,b} in(i + a, j + b) * k(a, b).
I64Matrix convolve2d(const I32Matrix& input, const I32Matrix& kernel);

/// Sum of products in wrapping 64-bit arithmetic.
std::int64_t dot(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

/// (n x m) * (m x p) with 64-bit accumulation.
I64Matrix matmul(const I32Matrix& a, const I32Matrix& b);

/// Number of (possibly overlapping) positions where `needle` occurs.
std::int64_t pattern_count(std::string_view haystack, std::string_view needle);

/// Radix-2 decimation-in-time FFT over interleaved Q15 data.
///
/// Each of the log2(N) stages halves its outputs, so the result is the DFT
/// scaled by 1/N. Twiddles come from a Q15 table (cos, -sin), complex
/// products and halvings round half away from zero, and butterfly outputs
/// saturate to the int16 range.
Q15Vec fft_fixed(const Q15Vec& input);

bool is_dna(std::string_view sequence);

/// Q15 helpers shared by the FFT and its tests.
namespace q15 {

/// round(value / 2^shift), ties away from zero.
std::int64_t round_shift(std::int64_t value, unsigned shift);
std::int16_t saturate(std::int64_t value);
std::int16_t from_double(double x);
inline double to_double(std::int16_t v) { return static_cast<double>(v) / 32768.0; }

/// Forward twiddles W_N^k = exp(-2 pi i k / N) for k < N/2, interleaved.
std::vector<std::int16_t> twiddle_table(std::size_t n);

}  // namespace q15

}  // namespace vpe::kernels

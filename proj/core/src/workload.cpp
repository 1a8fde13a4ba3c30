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

#include "vpe/workload.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "vpe/error.hpp"
#include "vpe/kernels.hpp"

namespace vpe {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(next());
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return lo + static_cast<std::int64_t>(r % range);
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  double u1 = unit();
  while (u1 <= 0.0) u1 = unit();
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string random_dna(Rng& rng, std::size_t length) {
  static constexpr char kBases[] = {'A', 'C', 'G', 'T'};
  std::string s(length, 'A');
  for (char& c : s) c = kBases[rng.next() >> 62];
  return s;
}

std::vector<std::int32_t> random_i32_vec(Rng& rng, std::size_t length, std::int32_t bound) {
  std::vector<std::int32_t> v(length);
  for (auto& x : v) x = static_cast<std::int32_t>(rng.uniform(-bound, bound));
  return v;
}

I32Matrix random_i32_matrix(Rng& rng, std::uint32_t rows, std::uint32_t cols, std::int32_t bound) {
  return I32Matrix(rows, cols, random_i32_vec(rng, static_cast<std::size_t>(rows) * cols, bound));
}

Q15Vec random_q15(Rng& rng, std::size_t complex_length, double amplitude) {
  Q15Vec v;
  v.data.resize(2 * complex_length);
  for (auto& x : v.data) x = kernels::q15::from_double(amplitude * (2.0 * rng.unit() - 1.0));
  return v;
}

std::uint64_t default_workload_size(std::string_view kernel) {
  if (kernel == "matmul") return 256;
  if (kernel == "convolution") return 512;
  if (kernel == "fft") return 4096;
  if (kernel == "dot" || kernel == "complement" || kernel == "pattern") return 1'000'000;
  throw Error(Errc::UnknownKernel, "no workload for kernel '" + std::string(kernel) + "'");
}

std::vector<Value> make_workload(std::string_view kernel, std::uint64_t size, std::uint64_t seed,
                                 std::uint32_t ksize) {
  if (size == 0) size = default_workload_size(kernel);
  Rng rng(seed);
  constexpr std::int32_t kBound = kernels::kMatrixElementBound;
  if (kernel == "complement") {
    return {Bytes{random_dna(rng, size)}};
  }
  if (kernel == "pattern") {
    return {Bytes{random_dna(rng, size)}, Bytes{random_dna(rng, 8)}};
  }
  if (kernel == "dot") {
    return {random_i32_vec(rng, size, kBound), random_i32_vec(rng, size, kBound)};
  }
  if (size > UINT32_MAX) throw Error(Errc::InvalidConfig, "workload size too large");
  const auto n = static_cast<std::uint32_t>(size);
  if (kernel == "matmul") {
    auto a = random_i32_matrix(rng, n, n, kBound);
    auto b = random_i32_matrix(rng, n, n, kBound);
    return {std::move(a), std::move(b)};
  }
  if (kernel == "convolution") {
    if (ksize % 2 == 0 || ksize > n) {
      throw Error(Errc::InvalidConfig, "convolution kernel size must be odd and <= size");
    }
    auto img = random_i32_matrix(rng, n, n, 255);
    auto k = random_i32_matrix(rng, ksize, ksize, 8);
    return {std::move(img), std::move(k)};
  }
  if (kernel == "fft") {
    if (!std::has_single_bit(size)) {
      throw Error(Errc::InvalidConfig, "fft size must be a power of two");
    }
    return {random_q15(rng, size, 0.5)};
  }
  throw Error(Errc::UnknownKernel, "no workload for kernel '" + std::string(kernel) + "'");
}

}  // namespace vpe

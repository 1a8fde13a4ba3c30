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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "vpe/value.hpp"

namespace vpe {

/// Seeded generator with draw rules fixed here rather than by the standard
/// library's distributions, so sequences are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1).
  double unit();
  /// Standard normal via Box-Muller.
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

std::string random_dna(Rng& rng, std::size_t length);
std::vector<std::int32_t> random_i32_vec(Rng& rng, std::size_t length, std::int32_t bound);
I32Matrix random_i32_matrix(Rng& rng, std::uint32_t rows, std::uint32_t cols, std::int32_t bound);
/// Components uniform in [-amplitude, amplitude).
Q15Vec random_q15(Rng& rng, std::size_t complex_length, double amplitude);

/// Defaults: matmul 256, dot/complement/pattern 1 000 000, convolution 512
/// (512x512 input, 3x3 kernel), fft 4096.
std::uint64_t default_workload_size(std::string_view kernel);

/// Seeded benchmark inputs for a built-in kernel. `size` 0 selects the
/// default. `ksize` applies to convolution only.
std::vector<Value> make_workload(std::string_view kernel, std::uint64_t size, std::uint64_t seed,
                                 std::uint32_t ksize = 3);

}  // namespace vpe

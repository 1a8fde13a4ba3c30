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

#include "vpe/catalog.hpp"

#include <bit>
#include <vector>

#include "vpe/kernels.hpp"

namespace vpe {

namespace {

const Bytes& bytes_arg(Args args, std::size_t i) { return std::get<Bytes>(args[i]); }
const I32Matrix& mat_arg(Args args, std::size_t i) { return std::get<I32Matrix>(args[i]); }
const std::vector<std::int32_t>& vec_arg(Args args, std::size_t i) {
  return std::get<std::vector<std::int32_t>>(args[i]);
}

// The checks reject bad shapes before dispatch, so a remote target never
// sees a call the local implementation would refuse for shape reasons.
std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> c;

  c.push_back({"complement", 1, {{ValueKind::Bytes}, ValueKind::Bytes},
               [](Args a) -> Value { return Bytes{kernels::complement(bytes_arg(a, 0).data)}; },
               [](Args a) {
                 if (!kernels::is_dna(bytes_arg(a, 0).data)) {
                   throw Error(Errc::ArgumentMismatch, "complement input is not DNA");
                 }
               }});

  c.push_back({"convolution", 2, {{ValueKind::I32Mat, ValueKind::I32Mat}, ValueKind::I64Mat},
               [](Args a) -> Value { return kernels::convolve2d(mat_arg(a, 0), mat_arg(a, 1)); },
               [](Args a) {
                 const auto& in = mat_arg(a, 0);
                 const auto& k = mat_arg(a, 1);
                 if (k.rows != k.cols || k.rows % 2 == 0 || k.rows > in.rows ||
                     k.rows > in.cols) {
                   throw Error(Errc::ArgumentMismatch,
                               "convolution kernel must be square, odd and fit the input");
                 }
               }});

  c.push_back({"dot", 3, {{ValueKind::I32Vec, ValueKind::I32Vec}, ValueKind::I64},
               [](Args a) -> Value { return kernels::dot(vec_arg(a, 0), vec_arg(a, 1)); },
               [](Args a) {
                 if (vec_arg(a, 0).size() != vec_arg(a, 1).size()) {
                   throw Error(Errc::ArgumentMismatch, "dot length mismatch");
                 }
               }});

  c.push_back({"matmul", 4, {{ValueKind::I32Mat, ValueKind::I32Mat}, ValueKind::I64Mat},
               [](Args a) -> Value { return kernels::matmul(mat_arg(a, 0), mat_arg(a, 1)); },
               [](Args a) {
                 if (mat_arg(a, 0).cols != mat_arg(a, 1).rows) {
                   throw Error(Errc::ArgumentMismatch, "matmul inner dimensions differ");
                 }
               }});

  c.push_back({"pattern", 5, {{ValueKind::Bytes, ValueKind::Bytes}, ValueKind::I64},
               [](Args a) -> Value {
                 return kernels::pattern_count(bytes_arg(a, 0).data, bytes_arg(a, 1).data);
               },
               [](Args a) {
                 if (bytes_arg(a, 1).data.empty()) {
                   throw Error(Errc::ArgumentMismatch, "empty pattern");
                 }
               }});

  c.push_back({"fft", 6, {{ValueKind::Q15ComplexVec}, ValueKind::Q15ComplexVec},
               [](Args a) -> Value { return kernels::fft_fixed(std::get<Q15Vec>(a[0])); },
               [](Args a) {
                 const std::size_t n = std::get<Q15Vec>(a[0]).complex_size();
                 if (n == 0 || !std::has_single_bit(n)) {
                   throw Error(Errc::ArgumentMismatch, "FFT length is not a power of two");
                 }
               }});
  return c;
}

}  // namespace

std::span<const CatalogEntry> builtin_kernels() {
  static const std::vector<CatalogEntry> catalog = make_catalog();
  return catalog;
}

const CatalogEntry& builtin_kernel(std::string_view name) {
  for (const CatalogEntry& e : builtin_kernels()) {
    if (e.name == name) return e;
  }
  throw Error(Errc::UnknownKernel, "no built-in kernel named '" + std::string(name) + "'");
}

const CatalogEntry* builtin_kernel_by_wire_id(std::uint32_t wire_id) {
  for (const CatalogEntry& e : builtin_kernels()) {
    if (e.wire_id == wire_id) return &e;
  }
  return nullptr;
}

}  // namespace vpe

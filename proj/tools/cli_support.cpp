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

#include "cli_support.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

#include "json.hpp"
#include "vpe/error.hpp"

#ifndef VPE_BUNDLED_PROFILE_DIR
#define VPE_BUNDLED_PROFILE_DIR ""
#endif

namespace vpe::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidConfig, what); }

std::int32_t to_i32(const json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max()) {
    bad("integer out of 32-bit range: " + j.dump());
  }
  return static_cast<std::int32_t>(v);
}

std::vector<std::int32_t> to_i32_vec(const json& j) {
  if (!j.is_array()) bad("expected an integer array, got " + j.dump());
  std::vector<std::int32_t> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(to_i32(e));
  return out;
}

template <typename T>
Matrix<T> to_matrix(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a non-empty array of rows");
  Matrix<T> m;
  m.rows = static_cast<std::uint32_t>(j.size());
  for (const json& row : j) {
    const auto r = to_i32_vec(row);
    if (m.cols == 0) m.cols = static_cast<std::uint32_t>(r.size());
    if (r.empty() || r.size() != m.cols) bad("matrix rows must be non-empty and equally long");
    m.data.insert(m.data.end(), r.begin(), r.end());
  }
  return m;
}

Value to_value(ValueKind kind, const json& j) {
  switch (kind) {
    case ValueKind::I64:
      if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
      return j.get<std::int64_t>();
    case ValueKind::Bytes:
      if (!j.is_string()) bad("expected a string, got " + j.dump());
      return Bytes{j.get<std::string>()};
    case ValueKind::I32Vec:
      return to_i32_vec(j);
    case ValueKind::I32Mat:
      return to_matrix<std::int32_t>(j);
    case ValueKind::I64Mat:
      return to_matrix<std::int64_t>(j);
    case ValueKind::Q15ComplexVec: {
      const auto flat = to_i32_vec(j);
      if (flat.size() % 2 != 0) bad("Q15 complex vector needs an even number of components");
      Q15Vec q;
      for (std::int32_t v : flat) {
        if (v < -32768 || v > 32767) bad("Q15 component out of range");
        q.data.push_back(static_cast<std::int16_t>(v));
      }
      return q;
    }
  }
  bad("unsupported argument kind");
}

}  // namespace

int exit_code_for(const std::exception& e) {
  const auto* err = dynamic_cast<const Error*>(&e);
  if (err == nullptr) return kExitInternal;
  switch (err->code()) {
    case Errc::UnknownKernel:
    case Errc::DuplicateKernel:
    case Errc::InvalidSignature:
    case Errc::ArgumentMismatch:
    case Errc::MissingImplementation:
    case Errc::Malformed:
    case Errc::InfeasibleModel:
    case Errc::InvalidConfig:
    case Errc::Io:
      return kExitBadConfig;
    case Errc::Transport:
    case Errc::RemoteUnknownKernel:
    case Errc::RemoteExecutionFailed:
    case Errc::RemoteMalformed:
      return kExitWorkerUnreachable;
    case Errc::BadImage:
      return kExitBadImage;
    case Errc::ExecutionFailed:
    case Errc::InvalidState:
      return kExitInternal;
  }
  return kExitInternal;
}

std::vector<Value> parse_args_json(const Signature& signature, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("--args is not valid JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.size() != signature.params.size()) {
    bad("--args must be an array of " + std::to_string(signature.params.size()) + " values");
  }
  std::vector<Value> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(to_value(signature.params[i], doc[i]));
  return out;
}

I32Matrix parse_matrix_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("matrix is not valid JSON: ") + e.what());
  }
  return to_matrix<std::int32_t>(doc);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& explicit_seed) {
  if (explicit_seed) return *explicit_seed;
  const char* env = std::getenv("VPE_SEED");
  if (env == nullptr || *env == '\0') return 1;
  const std::string s(env);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad("VPE_SEED '" + s + "' is not a u64");
  return v;
}

std::filesystem::path resolve_profile(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::exists(path, ec) || path.has_parent_path()) return path;
  if (const char* dir = std::getenv("VPE_PROFILE_DIR"); dir != nullptr && *dir != '\0') {
    const auto p = std::filesystem::path(dir) / path;
    if (std::filesystem::exists(p, ec)) return p;
  }
  const std::filesystem::path bundled(VPE_BUNDLED_PROFILE_DIR);
  if (!bundled.empty() && std::filesystem::exists(bundled / path, ec)) return bundled / path;
  return path;
}

}  // namespace vpe::cli

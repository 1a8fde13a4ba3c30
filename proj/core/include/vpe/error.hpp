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

#include <stdexcept>
#include <string>
#include <string_view>

namespace vpe {

enum class Errc {
  UnknownKernel,
  DuplicateKernel,
  InvalidSignature,
  ArgumentMismatch,
  MissingImplementation,
  ExecutionFailed,
  // Transport-level failure talking to a worker (connect, read, write).
  Transport,
  // Worker answered with a non-zero status.
  RemoteUnknownKernel,
  RemoteExecutionFailed,
  RemoteMalformed,
  // Local decode of bytes that do not form a valid message or value.
  Malformed,
  InfeasibleModel,
  InvalidConfig,
  InvalidState,
  Io,
  // Unreadable or malformed image file.
  BadImage,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vpe

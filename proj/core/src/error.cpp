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

#include "vpe/error.hpp"

namespace vpe {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::UnknownKernel: return "unknown kernel";
    case Errc::DuplicateKernel: return "duplicate kernel";
    case Errc::InvalidSignature: return "invalid signature";
    case Errc::ArgumentMismatch: return "argument mismatch";
    case Errc::MissingImplementation: return "missing implementation";
    case Errc::ExecutionFailed: return "execution failed";
    case Errc::Transport: return "transport error";
    case Errc::RemoteUnknownKernel: return "remote unknown kernel";
    case Errc::RemoteExecutionFailed: return "remote execution failed";
    case Errc::RemoteMalformed: return "remote malformed payload";
    case Errc::Malformed: return "malformed input";
    case Errc::InfeasibleModel: return "infeasible cost model";
    case Errc::InvalidConfig: return "invalid configuration";
    case Errc::InvalidState: return "invalid state";
    case Errc::Io: return "i/o error";
    case Errc::BadImage: return "bad image";
  }
  return "unknown error";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace vpe

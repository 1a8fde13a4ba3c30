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

#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "vpe/error.hpp"

namespace test {

template <typename F>
vpe::Errc code_of(F&& f) {
  try {
    f();
  } catch (const vpe::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no vpe::Error thrown";
  return vpe::Errc::InvalidState;
}

inline std::filesystem::path profile(const std::string& name) {
  return std::filesystem::path(VPE_TEST_PROFILE_DIR) / name;
}

}  // namespace test

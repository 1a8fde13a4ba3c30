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
#include <map>
#include <optional>
#include <set>
#include <string>

#include "vpe/cost_model.hpp"
#include "vpe/ids.hpp"
#include "vpe/profiler.hpp"
#include "vpe/registry.hpp"
#include "vpe/workload.hpp"

namespace vpe {

enum class TargetKind { Local, Simulated, RemoteWorker };

struct TargetDescriptor {
  TargetId id;
  TargetKind kind = TargetKind::Local;
  std::set<std::string> capabilities;
  /// Set for RemoteWorker targets.
  std::optional<std::string> endpoint;
};

/// Simulated time, advanced only by charge().
class VirtualClock final : public MeasurementSource {
 public:
  std::int64_t now_ns() const override { return now_; }
  ClockKind kind() const override { return ClockKind::Virtual; }

  void charge(std::int64_t ns);
  void charge_ms(double ms);

 private:
  std::int64_t now_ = 0;
};

Value execute_local(const Implementation& impl, Args args);

/// Runs `impl` for its result, then advances `clock` by the accelerator cost
/// of the call: setup (when `charge_setup`) + remote rate * units + noise,
/// clamped at zero.
Value execute_simulated(const Implementation& impl, Args args, const CostEntry& entry,
                        VirtualClock& clock, Rng& rng, bool charge_setup);

/// A host plus one simulated accelerator sharing a virtual clock.
///
/// host() and accelerator() wrap a local implementation so that calls
/// produce real results and charge simulated time. The platform must
/// outlive every implementation it hands out. Single-threaded by contract.
class SimulatedPlatform {
 public:
  SimulatedPlatform(CostModel model, std::uint64_t seed);
  SimulatedPlatform(const SimulatedPlatform&) = delete;
  SimulatedPlatform& operator=(const SimulatedPlatform&) = delete;

  VirtualClock& clock() { return clock_; }
  const VirtualClock& clock() const { return clock_; }
  const CostModel& model() const { return model_; }

  Implementation host(std::string kernel, Implementation local);
  Implementation accelerator(std::string kernel, Implementation local);

  /// Virtual milliseconds charged by the last call through this platform.
  double last_charge_ms() const { return last_charge_ms_; }

 private:
  struct KernelState {
    bool on_accelerator = false;
  };

  Value run_host(const std::string& kernel, const Implementation& impl, Args args);
  Value run_accelerator(const std::string& kernel, const Implementation& impl, Args args);

  CostModel model_;
  VirtualClock clock_;
  Rng rng_;
  std::map<std::string, KernelState, std::less<>> state_;
  double last_charge_ms_ = 0.0;
};

}  // namespace vpe

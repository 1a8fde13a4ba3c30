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

#include "vpe/targets.hpp"

#include <cmath>

#include "vpe/error.hpp"

namespace vpe {

namespace {

double noisy(double mean_ms, double stddev_ms, Rng& rng) {
  const double draw = rng.gaussian();
  return std::max(0.0, mean_ms + stddev_ms * draw);
}

}  // namespace

void VirtualClock::charge(std::int64_t ns) {
  if (ns < 0) throw Error(Errc::InvalidState, "virtual clock cannot go backwards");
  now_ += ns;
}

void VirtualClock::charge_ms(double ms) { charge(std::llround(ms * 1e6)); }

Value execute_local(const Implementation& impl, Args args) {
  if (!impl) throw Error(Errc::MissingImplementation, "no local implementation");
  return impl(args);
}

Value execute_simulated(const Implementation& impl, Args args, const CostEntry& entry,
                        VirtualClock& clock, Rng& rng, bool charge_setup) {
  Value result = execute_local(impl, args);
  const double units = work_units(entry.units, args);
  clock.charge_ms(noisy(entry.remote_ms(units, charge_setup), entry.noise_stddev_ms, rng));
  return result;
}

SimulatedPlatform::SimulatedPlatform(CostModel model, std::uint64_t seed)
    : model_(std::move(model)), rng_(seed) {}

Implementation SimulatedPlatform::host(std::string kernel, Implementation local) {
  return [this, kernel = std::move(kernel), local = std::move(local)](Args args) {
    return run_host(kernel, local, args);
  };
}

Implementation SimulatedPlatform::accelerator(std::string kernel, Implementation local) {
  return [this, kernel = std::move(kernel), local = std::move(local)](Args args) {
    return run_accelerator(kernel, local, args);
  };
}

Value SimulatedPlatform::run_host(const std::string& kernel, const Implementation& impl,
                                  Args args) {
  const CostEntry& entry = model_.entry(kernel);
  Value result = execute_local(impl, args);
  const double units = work_units(entry.units, args);
  const std::int64_t before = clock_.now_ns();
  clock_.charge_ms(noisy(entry.local_ms(units), entry.local_noise_stddev_ms, rng_));
  last_charge_ms_ = static_cast<double>(clock_.now_ns() - before) / 1e6;
  state_[kernel].on_accelerator = false;
  return result;
}

Value SimulatedPlatform::run_accelerator(const std::string& kernel, const Implementation& impl,
                                         Args args) {
  const CostEntry& entry = model_.entry(kernel);
  KernelState& st = state_[kernel];
  const bool setup = entry.setup_charge == SetupCharge::PerCall || !st.on_accelerator;
  const std::int64_t before = clock_.now_ns();
  Value result = execute_simulated(impl, args, entry, clock_, rng_, setup);
  last_charge_ms_ = static_cast<double>(clock_.now_ns() - before) / 1e6;
  st.on_accelerator = true;
  return result;
}

}  // namespace vpe

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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "vpe/value.hpp"

namespace vpe {

/// How a call's work size is derived from its arguments.
enum class UnitsFormula {
  Cubic,        // "n3": rows(A) * cols(A) * cols(B)
  Linear,       // "n": element count of the first argument
  NLogN,        // "nlogn": N log2 N over the first argument's element count
  ImageKernel,  // "hwk2": H * W * k^2
  Constant,     // "const": 1 per call
};

enum class SetupCharge {
  PerEpisode,  // once, on the first accelerator call after running elsewhere
  PerCall,
};

std::string_view to_string(UnitsFormula units);
UnitsFormula parse_units(std::string_view text);

double work_units(UnitsFormula units, Args args);

struct CostEntry {
  double setup_ms = 0.0;
  double local_per_unit_ms = 0.0;
  double remote_per_unit_ms = 0.0;
  UnitsFormula units = UnitsFormula::Constant;
  double noise_stddev_ms = 0.0;
  double local_noise_stddev_ms = 0.0;
  SetupCharge setup_charge = SetupCharge::PerEpisode;

  /// Throws Error(InvalidConfig) if any rate, setup or stddev is negative.
  void validate() const;

  /// Noise-free per-call times for a call of `units` work units.
  double local_ms(double units) const { return local_per_unit_ms * units; }
  double remote_ms(double units, bool with_setup) const {
    return (with_setup ? setup_ms : 0.0) + remote_per_unit_ms * units;
  }
};

/// Per-kernel simulated timing law, keyed by kernel name.
///
/// JSON document: { "<kernel>": { "setup_ms", "local_per_unit_ms",
/// "remote_per_unit_ms", "units", "noise_stddev_ms" } } with the optional
/// extras "local_noise_stddev_ms" (default 0) and "setup_charge"
/// ("episode" default, or "call").
class CostModel {
 public:
  CostModel() = default;

  static CostModel from_json(std::string_view text);
  static CostModel load(const std::filesystem::path& path);
  std::string to_json() const;

  void set(const std::string& kernel, CostEntry entry);
  bool contains(std::string_view kernel) const;
  /// Throws Error(InvalidConfig) when the kernel has no entry.
  const CostEntry& entry(std::string_view kernel) const;
  const std::map<std::string, CostEntry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, CostEntry, std::less<>> entries_;
};

struct CrossoverAnchors {
  double crossover_size = 0.0;   // n where local and remote times are equal
  double setup_ms = 0.0;         // per-call setup S
  double local_time_ms = 0.0;    // local time T_l at the calibration size
  double speedup = 0.0;          // local/remote ratio at the calibration size
};

/// t_local(n) = l n^3, t_remote(n) = S + r n^3.
struct AffineCubicFit {
  double local_per_unit_ms = 0.0;
  double remote_per_unit_ms = 0.0;
  double setup_ms = 0.0;
  double calibration_size = 0.0;

  double ratio() const { return local_per_unit_ms / remote_per_unit_ms; }
  double local_ms(double n) const { return local_per_unit_ms * n * n * n; }
  double remote_ms(double n) const { return setup_ms + remote_per_unit_ms * n * n * n; }
  /// Size where local and remote times are equal.
  double crossover_size() const;
  /// Cubic-units per-call-setup entry for this fit.
  CostEntry entry(double noise_stddev_ms = 0.0) const;
};

/// Solves for l, r and the calibration size from crossover, setup, local
/// time and speedup anchors. Throws Error(InfeasibleModel) when the anchors
/// contradict each other (speedup <= 1, or a negative remote rate).
AffineCubicFit fit_cost_model(const CrossoverAnchors& anchors);

}  // namespace vpe

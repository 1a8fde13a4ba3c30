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

#include "vpe/cost_model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "vpe/error.hpp"

namespace vpe {

using nlohmann::json;

std::string_view to_string(UnitsFormula units) {
  switch (units) {
    case UnitsFormula::Cubic: return "n3";
    case UnitsFormula::Linear: return "n";
    case UnitsFormula::NLogN: return "nlogn";
    case UnitsFormula::ImageKernel: return "hwk2";
    case UnitsFormula::Constant: return "const";
  }
  return "const";
}

UnitsFormula parse_units(std::string_view text) {
  if (text == "n3") return UnitsFormula::Cubic;
  if (text == "n") return UnitsFormula::Linear;
  if (text == "nlogn") return UnitsFormula::NLogN;
  if (text == "hwk2") return UnitsFormula::ImageKernel;
  if (text == "const") return UnitsFormula::Constant;
  throw Error(Errc::InvalidConfig, "unknown units formula '" + std::string(text) + "'");
}

namespace {

double first_count(Args args) {
  if (args.empty()) return 0.0;
  return std::visit(
      [](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, Bytes>) {
          return static_cast<double>(x.data.size());
        } else if constexpr (std::is_same_v<T, Q15Vec>) {
          return static_cast<double>(x.complex_size());
        } else if constexpr (std::is_same_v<T, std::vector<std::int32_t>>) {
          return static_cast<double>(x.size());
        } else {
          return static_cast<double>(x.rows) * x.cols;
        }
      },
      args[0]);
}

}  // namespace

double work_units(UnitsFormula units, Args args) {
  switch (units) {
    case UnitsFormula::Constant:
      return 1.0;
    case UnitsFormula::Linear:
      return first_count(args);
    case UnitsFormula::NLogN: {
      const double n = first_count(args);
      return n <= 1.0 ? 0.0 : n * std::log2(n);
    }
    case UnitsFormula::Cubic: {
      if (args.size() < 2) break;
      const auto* a = std::get_if<I32Matrix>(&args[0]);
      const auto* b = std::get_if<I32Matrix>(&args[1]);
      if (a == nullptr || b == nullptr) break;
      return static_cast<double>(a->rows) * a->cols * b->cols;
    }
    case UnitsFormula::ImageKernel: {
      if (args.size() < 2) break;
      const auto* in = std::get_if<I32Matrix>(&args[0]);
      const auto* k = std::get_if<I32Matrix>(&args[1]);
      if (in == nullptr || k == nullptr) break;
      return static_cast<double>(in->rows) * in->cols * k->rows * k->cols;
    }
  }
  throw Error(Errc::InvalidConfig, "units formula '" + std::string(to_string(units)) +
                                       "' does not apply to these arguments");
}

void CostEntry::validate() const {
  const double fields[] = {setup_ms, local_per_unit_ms, remote_per_unit_ms, noise_stddev_ms,
                           local_noise_stddev_ms};
  for (double f : fields) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw Error(Errc::InvalidConfig, "cost model fields must be finite and non-negative");
    }
  }
}

CostModel CostModel::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("cost model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::InvalidConfig, "cost model must be a JSON object");
  CostModel model;
  for (const auto& [kernel, node] : doc.items()) {
    if (!node.is_object()) {
      throw Error(Errc::InvalidConfig, "cost model entry '" + kernel + "' is not an object");
    }
    try {
      CostEntry e;
      e.setup_ms = node.at("setup_ms").get<double>();
      e.local_per_unit_ms = node.at("local_per_unit_ms").get<double>();
      e.remote_per_unit_ms = node.at("remote_per_unit_ms").get<double>();
      e.units = parse_units(node.at("units").get<std::string>());
      e.noise_stddev_ms = node.at("noise_stddev_ms").get<double>();
      e.local_noise_stddev_ms = node.value("local_noise_stddev_ms", 0.0);
      const std::string charge = node.value("setup_charge", std::string("episode"));
      if (charge == "episode") {
        e.setup_charge = SetupCharge::PerEpisode;
      } else if (charge == "call") {
        e.setup_charge = SetupCharge::PerCall;
      } else {
        throw Error(Errc::InvalidConfig, "setup_charge must be \"episode\" or \"call\"");
      }
      model.set(kernel, e);
    } catch (const json::exception& ex) {
      throw Error(Errc::InvalidConfig, "cost model entry '" + kernel + "': " + ex.what());
    }
  }
  return model;
}

CostModel CostModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidConfig, "cannot open cost model " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_json(text.str());
}

std::string CostModel::to_json() const {
  json doc = json::object();
  for (const auto& [kernel, e] : entries_) {
    doc[kernel] = {
        {"setup_ms", e.setup_ms},
        {"local_per_unit_ms", e.local_per_unit_ms},
        {"remote_per_unit_ms", e.remote_per_unit_ms},
        {"units", std::string(to_string(e.units))},
        {"noise_stddev_ms", e.noise_stddev_ms},
        {"local_noise_stddev_ms", e.local_noise_stddev_ms},
        {"setup_charge", e.setup_charge == SetupCharge::PerCall ? "call" : "episode"},
    };
  }
  return doc.dump(2) + "\n";
}

void CostModel::set(const std::string& kernel, CostEntry entry) {
  entry.validate();
  entries_[kernel] = entry;
}

bool CostModel::contains(std::string_view kernel) const {
  return entries_.find(kernel) != entries_.end();
}

const CostEntry& CostModel::entry(std::string_view kernel) const {
  auto it = entries_.find(kernel);
  if (it == entries_.end()) {
    throw Error(Errc::InvalidConfig, "cost model has no entry for '" + std::string(kernel) + "'");
  }
  return it->second;
}

double AffineCubicFit::crossover_size() const {
  const double gap = local_per_unit_ms - remote_per_unit_ms;
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  return std::cbrt(setup_ms / gap);
}

CostEntry AffineCubicFit::entry(double noise_stddev_ms) const {
  CostEntry e;
  e.setup_ms = setup_ms;
  e.local_per_unit_ms = local_per_unit_ms;
  e.remote_per_unit_ms = remote_per_unit_ms;
  e.units = UnitsFormula::Cubic;
  e.noise_stddev_ms = noise_stddev_ms;
  e.setup_charge = SetupCharge::PerCall;
  return e;
}

AffineCubicFit fit_cost_model(const CrossoverAnchors& a) {
  if (!(a.crossover_size > 0.0) || !(a.setup_ms > 0.0) || !(a.local_time_ms > 0.0)) {
    throw Error(Errc::InfeasibleModel, "crossover size, setup and local time must be positive");
  }
  if (!(a.speedup > 1.0)) {
    throw Error(Errc::InfeasibleModel,
                "speedup " + std::to_string(a.speedup) +
                    " <= 1: the remote target never wins, yet a crossover is required");
  }
  // Remote compute time at the calibration size: T_l / sigma - S = r n_cal^3.
  const double remote_compute = a.local_time_ms / a.speedup - a.setup_ms;
  if (remote_compute < 0.0) {
    throw Error(Errc::InfeasibleModel,
                "setup " + std::to_string(a.setup_ms) + " ms exceeds the remote time " +
                    std::to_string(a.local_time_ms / a.speedup) +
                    " ms implied by the speedup; this needs a negative remote rate");
  }
  // 1/rho = r/l = remote_compute / T_l; crossover gives l (1 - 1/rho) n_x^3 = S.
  const double inv_ratio = remote_compute / a.local_time_ms;
  const double nx3 = a.crossover_size * a.crossover_size * a.crossover_size;
  AffineCubicFit fit;
  fit.setup_ms = a.setup_ms;
  fit.local_per_unit_ms = a.setup_ms / (nx3 * (1.0 - inv_ratio));
  fit.remote_per_unit_ms = fit.local_per_unit_ms * inv_ratio;
  fit.calibration_size = std::cbrt(a.local_time_ms / fit.local_per_unit_ms);
  return fit;
}

}  // namespace vpe

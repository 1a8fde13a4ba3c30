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

#include "vpe/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "json.hpp"

namespace vpe::report {

using nlohmann::json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf;
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string stats_csv(const std::vector<ReportRow>& rows) {
  std::string out = "kernel,target,count,mean_ms,stddev_ms,total_ms\n";
  for (const ReportRow& r : rows) {
    out += r.kernel_name + "," + r.target.name + "," + std::to_string(r.count) + "," +
           format_double(r.mean_ms) + "," + format_double(r.stddev_ms) + "," +
           format_double(r.total_ms) + "\n";
  }
  return out;
}

std::string stats_json(const std::vector<ReportRow>& rows, int indent) {
  json arr = json::array();
  for (const ReportRow& r : rows) {
    arr.push_back({{"kernel", r.kernel_name},
                   {"target", r.target.name},
                   {"count", r.count},
                   {"mean_ms", r.mean_ms},
                   {"stddev_ms", r.stddev_ms},
                   {"total_ms", r.total_ms}});
  }
  return arr.dump(indent);
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
  std::string out = "round,kernel,action,target,local_mean_ms,remote_mean_ms,speedup\n";
  for (const TraceEntry& t : trace) {
    out += std::to_string(t.round) + "," + t.kernel + "," + std::string(to_string(t.action)) +
           "," + t.target.name + "," + format_optional(t.local_mean_ms) + "," +
           format_optional(t.remote_mean_ms) + "," + format_optional(t.speedup) + "\n";
  }
  return out;
}

std::string trace_json(const std::vector<TraceEntry>& trace, int indent) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json arr = json::array();
  for (const TraceEntry& t : trace) {
    arr.push_back({{"round", t.round},
                   {"kernel", t.kernel},
                   {"action", std::string(to_string(t.action))},
                   {"target", t.target.name},
                   {"local_mean_ms", opt(t.local_mean_ms)},
                   {"remote_mean_ms", opt(t.remote_mean_ms)},
                   {"speedup", opt(t.speedup)}});
  }
  return arr.dump(indent);
}

}  // namespace vpe::report

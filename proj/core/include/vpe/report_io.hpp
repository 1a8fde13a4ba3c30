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

#include <optional>
#include <string>
#include <vector>

#include "vpe/controller.hpp"
#include "vpe/profiler.hpp"

/// CSV and JSON forms of the profiler report and the decision trace.
///
///   stats: kernel,target,count,mean_ms,stddev_ms,total_ms
///   trace: round,kernel,action,target,local_mean_ms,remote_mean_ms,speedup
///
/// Numbers use the shortest text that parses back to the same double;
/// absent trace values are empty CSV fields and JSON nulls.
namespace vpe::report {

std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

std::string stats_csv(const std::vector<ReportRow>& rows);
std::string stats_json(const std::vector<ReportRow>& rows, int indent = 2);

std::string trace_csv(const std::vector<TraceEntry>& trace);
std::string trace_json(const std::vector<TraceEntry>& trace, int indent = 2);

}  // namespace vpe::report

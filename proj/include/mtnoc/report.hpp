/*
 * Copyright 2026 The mtnoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtnoc/engine.hpp"
#include "mtnoc/metrics.hpp"

namespace mtnoc {

/// Key/value text report, one `key = value` per line.
std::string format_text(const MetricsReport& r);

/// Column order of the flow CSV. Stable across releases.
inline constexpr const char* kFlowCsvHeader =
    "flow,name,source,destination,vi,injected,refused,queued,delivered,denied,misrouted,"
    "cross_vi,in_flight,mean_latency,mean_waiting,p95_latency,max_latency,throughput,bandwidth_gbps";

/// One row per flow plus a final `total` row.
std::string format_flow_csv(const MetricsReport& r);

inline constexpr const char* kSweepCsvHeader =
    "variant,rate,mean_latency,mean_waiting,throughput,delivered";

struct SweepSeries {
  std::string variant;  // "no_collision", "collision", "scenario"
  std::vector<SweepRow> rows;
};

std::string format_sweep_csv(const std::vector<SweepSeries>& series);

/// FNV-1a over the text report, for quick determinism checks.
std::uint64_t report_digest(const MetricsReport& r);

}  // namespace mtnoc

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

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mtnoc/common.hpp"
#include "mtnoc/packet.hpp"
#include "mtnoc/router.hpp"
#include "mtnoc/vregion.hpp"

namespace mtnoc {

/// Half-open cycle range [begin, end) keyed on injection cycle.
struct Window {
  Cycle begin = 0;
  Cycle end = 0;
};

class LatencyStats {
 public:
  void add(Cycle latency, Cycle waiting);

  std::uint64_t count() const noexcept { return count_; }
  double mean_latency() const noexcept;
  double mean_waiting() const noexcept;
  Cycle percentile_latency(double q) const noexcept;
  Cycle max_latency() const noexcept { return hist_.empty() ? 0 : hist_.size() - 1; }
  std::uint64_t latency_sum() const noexcept { return lat_sum_; }
  std::uint64_t waiting_sum() const noexcept { return wait_sum_; }

  void merge(const LatencyStats& o);

 private:
  std::uint64_t count_ = 0;
  std::uint64_t lat_sum_ = 0;
  std::uint64_t wait_sum_ = 0;
  std::vector<std::uint64_t> hist_;
};

struct FlowCounts {
  std::uint64_t injected = 0;  // attempts
  std::uint64_t refused = 0;
  std::uint64_t queued = 0;
  std::uint64_t delivered = 0;
  std::uint64_t denied = 0;
  std::uint64_t misrouted = 0;
  std::uint64_t cross_vi = 0;  // delivered into a VR whose owner differs from the source

  std::uint64_t in_flight() const noexcept { return queued - delivered - denied - misrouted; }
  bool conserved() const noexcept {
    return queued <= injected && injected == queued + refused &&
           delivered + denied + misrouted <= queued;
  }
  void merge(const FlowCounts& o);
};

struct FlowMetrics {
  FlowId id = 0;
  std::string name;
  std::string source;       // "VR3", "host"
  std::string destination;  // "VR4", "router 2 / East", "direct VR5", "forged"
  std::uint16_t vi = 0;
  FlowCounts counts;
  LatencyStats stats;  // flits injected at or after warmup
  std::vector<LatencyStats> windows;
  Cycle first_delivery = 0;
  std::uint64_t window_delivered = 0;  // deliveries from first_delivery on
  bool any_delivery = false;
  double throughput = 0.0;  // flits/cycle over the flow's active window
  double bandwidth_bps = 0.0;
};

struct VrMetrics {
  VrNumber number = 0;
  unsigned router_id = 0;
  std::string side;
  std::uint16_t owner = 0;
  VrCounters counters;
  std::uint64_t sink_hash = 0;
};

struct ViMetrics {
  std::uint16_t vi = 0;
  std::uint64_t delivered = 0;
  std::uint64_t denied = 0;
  LatencyStats stats;
};

struct RouterMetrics {
  unsigned router_id = 0;
  unsigned radix = 0;
  std::array<std::uint64_t, kPorts> emitted{};
  std::array<std::uint64_t, kPorts> collisions{};
};

struct MetricsReport {
  std::string mode;  // "topology" or "bench"
  Cycle cycles = 0;
  Cycle warmup = 0;
  std::uint64_t seed = 0;
  unsigned data_width_bits = 0;
  double clock_frequency_hz = 0.0;
  std::vector<Window> windows;

  std::vector<FlowMetrics> flows;
  FlowCounts total;
  LatencyStats total_stats;
  double total_throughput = 0.0;  // delivered flits per cycle after warmup
  double total_bandwidth_bps = 0.0;
  std::uint64_t forged_injected = 0;
  std::uint64_t forged_denied = 0;
  std::uint64_t forged_delivered = 0;

  std::vector<VrMetrics> vrs;
  std::vector<ViMetrics> vis;
  std::vector<RouterMetrics> routers;
  std::vector<std::pair<VrNumber, std::uint16_t>> allocation;

  const FlowMetrics& flow(const std::string& name) const;
};

/// Accumulates per-flow results while a run progresses.
class MetricsCollector {
 public:
  MetricsCollector(std::vector<FlowMetrics> flows, Cycle warmup, std::vector<Window> windows);

  FlowCounts& counts(FlowId f) { return flows_.at(f).counts; }
  void on_delivered(const Flit& f, Cycle now, bool cross_vi);
  void on_denied(const Flit& f);
  void on_misrouted(const Flit& f);

  std::uint64_t delivered_after_warmup() const noexcept { return delivered_after_warmup_; }
  std::vector<FlowMetrics>& flows() noexcept { return flows_; }
  const std::vector<FlowMetrics>& flows() const noexcept { return flows_; }

  /// Totals, throughput, bandwidth and forged counters.
  void finish(MetricsReport& r, Cycle cycles, unsigned width, double clock_hz,
              const std::vector<bool>& forged_flow) const;

 private:
  std::vector<FlowMetrics> flows_;
  Cycle warmup_;
  std::vector<Window> windows_;
  std::uint64_t delivered_after_warmup_ = 0;
};

}  // namespace mtnoc

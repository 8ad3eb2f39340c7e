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

#include "mtnoc/metrics.hpp"

#include <algorithm>
#include <cmath>


namespace mtnoc {

void LatencyStats::add(Cycle latency, Cycle waiting) {
  ++count_;
  lat_sum_ += latency;
  wait_sum_ += waiting;
  if (latency >= hist_.size()) hist_.resize(latency + 1, 0);
  ++hist_[latency];
}

double LatencyStats::mean_latency() const noexcept {
  return count_ == 0 ? 0.0 : static_cast<double>(lat_sum_) / static_cast<double>(count_);
}

double LatencyStats::mean_waiting() const noexcept {
  return count_ == 0 ? 0.0 : static_cast<double>(wait_sum_) / static_cast<double>(count_);
}

Cycle LatencyStats::percentile_latency(double q) const noexcept {
  if (count_ == 0) return 0;
  // Nearest-rank percentile.
  const auto rank = static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(count_)));
  std::uint64_t seen = 0;
  for (std::size_t l = 0; l < hist_.size(); ++l) {
    seen += hist_[l];
    if (seen >= std::max<std::uint64_t>(rank, 1)) return l;
  }
  return hist_.size() - 1;
}

void LatencyStats::merge(const LatencyStats& o) {
  count_ += o.count_;
  lat_sum_ += o.lat_sum_;
  wait_sum_ += o.wait_sum_;
  if (o.hist_.size() > hist_.size()) hist_.resize(o.hist_.size(), 0);
  for (std::size_t i = 0; i < o.hist_.size(); ++i) hist_[i] += o.hist_[i];
}

void FlowCounts::merge(const FlowCounts& o) {
  injected += o.injected;
  refused += o.refused;
  queued += o.queued;
  delivered += o.delivered;
  denied += o.denied;
  misrouted += o.misrouted;
  cross_vi += o.cross_vi;
}

const FlowMetrics& MetricsReport::flow(const std::string& name) const {
  for (const auto& f : flows)
    if (f.name == name) return f;
  throw std::out_of_range("no flow named " + name);
}

MetricsCollector::MetricsCollector(std::vector<FlowMetrics> flows, Cycle warmup,
                                   std::vector<Window> windows)
    : flows_(std::move(flows)), warmup_(warmup), windows_(std::move(windows)) {
  for (auto& f : flows_) f.windows.assign(windows_.size(), LatencyStats{});
}

void MetricsCollector::on_delivered(const Flit& f, Cycle now, bool cross_vi) {
  auto& m = flows_.at(f.flow);
  ++m.counts.delivered;
  if (cross_vi) ++m.counts.cross_vi;
  const Cycle latency = now - f.inject_cycle;
  const Cycle waiting = f.pull_cycle - f.inject_cycle;
  if (f.inject_cycle >= warmup_) m.stats.add(latency, waiting);
  for (std::size_t w = 0; w < windows_.size(); ++w)
    if (f.inject_cycle >= windows_[w].begin && f.inject_cycle < windows_[w].end)
      m.windows[w].add(latency, waiting);
  if (now >= warmup_) {
    ++delivered_after_warmup_;
    if (!m.any_delivery) {
      m.any_delivery = true;
      m.first_delivery = now;
    }
    ++m.window_delivered;
  }
}

void MetricsCollector::on_denied(const Flit& f) { ++flows_.at(f.flow).counts.denied; }

void MetricsCollector::on_misrouted(const Flit& f) { ++flows_.at(f.flow).counts.misrouted; }

void MetricsCollector::finish(MetricsReport& r, Cycle cycles, unsigned width, double clock_hz,
                              const std::vector<bool>& forged_flow) const {
  r.flows = flows_;
  r.total = {};
  r.total_stats = {};
  for (std::size_t i = 0; i < r.flows.size(); ++i) {
    auto& f = r.flows[i];
    if (f.any_delivery && cycles > f.first_delivery) {
      f.throughput = static_cast<double>(f.window_delivered) /
                     static_cast<double>(cycles - f.first_delivery);
    }
    f.bandwidth_bps = static_cast<double>(width) * clock_hz * f.throughput;
    r.total.merge(f.counts);
    r.total_stats.merge(f.stats);
    if (i < forged_flow.size() && forged_flow[i]) {
      r.forged_injected += f.counts.queued;
      r.forged_denied += f.counts.denied;
      r.forged_delivered += f.counts.delivered;
    }
  }
  const Cycle span = cycles > warmup_ ? cycles - warmup_ : 0;
  r.total_throughput =
      span == 0 ? 0.0 : static_cast<double>(delivered_after_warmup_) / static_cast<double>(span);
  r.total_bandwidth_bps = static_cast<double>(width) * clock_hz * r.total_throughput;
}

}  // namespace mtnoc

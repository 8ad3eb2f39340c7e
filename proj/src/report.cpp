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

#include "mtnoc/report.hpp"

#include <cstdio>
#include <sstream>

namespace mtnoc {

namespace {

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string gbps(double bps) { return fixed(bps / 1e9, 3); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void counts_kv(std::ostringstream& o, const std::string& prefix, const FlowCounts& c) {
  o << prefix << "injected = " << c.injected << '\n'
    << prefix << "refused = " << c.refused << '\n'
    << prefix << "queued = " << c.queued << '\n'
    << prefix << "delivered = " << c.delivered << '\n'
    << prefix << "denied = " << c.denied << '\n'
    << prefix << "misrouted = " << c.misrouted << '\n'
    << prefix << "cross_vi = " << c.cross_vi << '\n'
    << prefix << "in_flight = " << c.in_flight() << '\n';
}

void stats_kv(std::ostringstream& o, const std::string& prefix, const LatencyStats& s) {
  o << prefix << "samples = " << s.count() << '\n'
    << prefix << "mean_latency = " << fixed(s.mean_latency()) << '\n'
    << prefix << "mean_waiting = " << fixed(s.mean_waiting()) << '\n'
    << prefix << "p95_latency = " << s.percentile_latency(0.95) << '\n'
    << prefix << "max_latency = " << s.max_latency() << '\n';
}

void csv_row(std::ostringstream& o, const std::string& id, const std::string& name,
             const std::string& src, const std::string& dst, std::uint16_t vi, const FlowCounts& c,
             const LatencyStats& s, double throughput, double bps) {
  o << id << ',' << csv_field(name) << ',' << csv_field(src) << ',' << csv_field(dst) << ',' << vi
    << ',' << c.injected << ',' << c.refused << ',' << c.queued << ',' << c.delivered << ','
    << c.denied << ',' << c.misrouted << ',' << c.cross_vi << ',' << c.in_flight() << ','
    << fixed(s.mean_latency()) << ',' << fixed(s.mean_waiting()) << ','
    << s.percentile_latency(0.95) << ',' << s.max_latency() << ',' << fixed(throughput, 6) << ','
    << gbps(bps) << '\n';
}

}  // namespace

std::string format_text(const MetricsReport& r) {
  std::ostringstream o;
  o << "mode = " << r.mode << '\n'
    << "cycles = " << r.cycles << '\n'
    << "warmup = " << r.warmup << '\n'
    << "seed = " << r.seed << '\n'
    << "data_width_bits = " << r.data_width_bits << '\n'
    << "clock_frequency_mhz = " << fixed(r.clock_frequency_hz / 1e6) << '\n'
    << "flows = " << r.flows.size() << '\n';
  counts_kv(o, "total.", r.total);
  stats_kv(o, "total.", r.total_stats);
  o << "total.throughput = " << fixed(r.total_throughput, 6) << '\n'
    << "total.bandwidth_gbps = " << gbps(r.total_bandwidth_bps) << '\n'
    << "forged.injected = " << r.forged_injected << '\n'
    << "forged.denied = " << r.forged_denied << '\n'
    << "forged.delivered = " << r.forged_delivered << '\n';

  for (const auto& f : r.flows) {
    const std::string p = "flow." + f.name + '.';
    o << p << "source = " << f.source << '\n'
      << p << "destination = " << f.destination << '\n'
      << p << "vi = " << f.vi << '\n';
    counts_kv(o, p, f.counts);
    stats_kv(o, p, f.stats);
    o << p << "throughput = " << fixed(f.throughput, 6) << '\n'
      << p << "bandwidth_gbps = " << gbps(f.bandwidth_bps) << '\n';
    for (std::size_t w = 0; w < f.windows.size(); ++w) {
      const auto& win = r.windows.at(w);
      const std::string wp = p + "window" + std::to_string(w) + '.';
      o << wp << "range = [" << win.begin << ", " << win.end << ")\n";
      stats_kv(o, wp, f.windows[w]);
    }
  }
  for (const auto& v : r.vrs) {
    const std::string p = "vr." + std::to_string(v.number) + '.';
    o << p << "router = " << v.router_id << '\n'
      << p << "side = " << v.side << '\n'
      << p << "owner = " << v.owner << '\n'
      << p << "injected = " << v.counters.injected << '\n'
      << p << "accepted = " << v.counters.accepted << '\n'
      << p << "denied = " << v.counters.denied << '\n'
      << p << "mean_queue_depth = " << fixed(v.counters.mean_depth()) << '\n'
      << p << "max_queue_depth = " << v.counters.max_depth << '\n';
  }
  for (const auto& v : r.vis) {
    const std::string p = "vi." + std::to_string(v.vi) + '.';
    o << p << "delivered = " << v.delivered << '\n' << p << "denied = " << v.denied << '\n';
    stats_kv(o, p, v.stats);
  }
  for (const auto& rt : r.routers) {
    const std::string p = "router." + std::to_string(rt.router_id) + '.';
    o << p << "radix = " << rt.radix << '\n';
    for (auto d : kAllDirections) {
      o << p << to_string(d) << ".emitted = " << rt.emitted[index(d)] << '\n'
        << p << to_string(d) << ".collisions = " << rt.collisions[index(d)] << '\n';
    }
  }
  for (const auto& [vr, vi] : r.allocation) o << "allocation.vr" << vr << " = " << vi << '\n';
  return o.str();
}

std::string format_flow_csv(const MetricsReport& r) {
  std::ostringstream o;
  o << kFlowCsvHeader << '\n';
  for (const auto& f : r.flows)
    csv_row(o, std::to_string(f.id), f.name, f.source, f.destination, f.vi, f.counts, f.stats,
            f.throughput, f.bandwidth_bps);
  csv_row(o, "total", "total", "", "", 0, r.total, r.total_stats, r.total_throughput,
          r.total_bandwidth_bps);
  return o.str();
}

std::string format_sweep_csv(const std::vector<SweepSeries>& series) {
  std::ostringstream o;
  o << kSweepCsvHeader << '\n';
  for (const auto& s : series)
    for (const auto& row : s.rows)
      o << s.variant << ',' << fixed(row.rate) << ',' << fixed(row.mean_latency) << ','
        << fixed(row.mean_waiting) << ',' << fixed(row.throughput, 6) << ',' << row.delivered
        << '\n';
  return o.str();
}

std::uint64_t report_digest(const MetricsReport& r) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : format_text(r)) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace mtnoc

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
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtnoc/metrics.hpp"
#include "mtnoc/tenancy.hpp"
#include "mtnoc/topology.hpp"

namespace mtnoc {

enum class TrafficKind : std::uint8_t { Bernoulli, Stream, Burst };
enum class SourceKind : std::uint8_t { Vr, Host };
enum class PayloadPattern : std::uint8_t { Counter, Random, Constant };

inline constexpr Cycle kForever = std::numeric_limits<Cycle>::max();

struct TrafficProfile {
  std::string name;
  TrafficKind kind = TrafficKind::Bernoulli;
  double rate = 0.0;          // Bernoulli: offer probability per cycle
  std::uint64_t length = 0;   // Stream: total flits, 0 = unlimited
  Cycle period = 1;           // Burst: cycles between burst starts
  unsigned burst_size = 1;    // Burst: flits written at each burst start

  SourceKind source = SourceKind::Vr;
  VrNumber src_vr = 0;        // Vr sources
  VrNumber host_dest_vr = 0;  // Host sources: shell ingress target
  std::uint16_t host_vi = 0;  // Host sources: VI the host traffic belongs to
  VrNumber direct_to = 0;     // non-zero: use the direct link to this VR

  // Adversarial generator; bypasses the wrapper.
  bool forged = false;
  std::optional<std::uint16_t> forge_vi;   // default: source VR owner
  std::optional<VrNumber> forge_dest;      // default: random VR not owned by forge_vi

  PayloadPattern pattern = PayloadPattern::Counter;
  std::uint64_t constant = 0;
  std::optional<std::uint64_t> seed;  // default: derived from the master seed
  Cycle start_cycle = 0;
  Cycle stop_cycle = kForever;
};

/// Port-level testbench of one router: a source queue and an always-ready
/// sink on every port, without the rest of the chain.
enum class BenchPattern : std::uint8_t { NoCollision, Collision };

struct BenchConfig {
  unsigned radix = 3;
  BenchPattern pattern = BenchPattern::NoCollision;
  /// Offered load per output. In the collision pattern the load on the shared
  /// output is split evenly over its sources.
  double rate = 0.6;
};

struct SimConfig {
  TopologyConfig topology;
  std::optional<BenchConfig> bench;
  std::vector<TrafficProfile> traffic;
  std::vector<AllocationEvent> events;
  Cycle cycles = 10000;
  std::uint64_t seed = 1;
  std::optional<Cycle> warmup;  // default: 10% of cycles
  std::size_t queue_capacity = 0;  // 0 = unbounded injection queues
  std::size_t sink_log_limit = 4096;
  Cycle host_latency = 1;
  std::vector<Window> windows;
  bool check_invariants = true;

  Cycle effective_warmup() const noexcept { return warmup.value_or(cycles / 10); }
};

/// Rejects configurations that cannot run. Called by every entry point.
void validate_config(const SimConfig& cfg);

class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg);
  ~Simulation();
  Simulation(Simulation&&) noexcept;
  Simulation& operator=(Simulation&&) noexcept;

  /// Per-router CSV trace, one row per (cycle, router). Not owned.
  void set_trace(std::ostream* out);

  /// Advances one cycle.
  void step();
  /// Runs until `cfg.cycles` cycles have elapsed.
  void run_to_end();

  Cycle now() const noexcept;
  const Topology& topology() const noexcept;
  const TenancyLedger& tenancy() const noexcept;
  const VirtualRegion& vr(VrNumber n) const;
  const Router& router(unsigned id) const;

  MetricsReport report() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

MetricsReport run(const SimConfig& cfg, std::ostream* trace = nullptr);

/// Topology-free single-router bench (used when `cfg.bench` is set).
MetricsReport run_router_bench(const SimConfig& cfg, std::ostream* trace = nullptr);

struct SweepRow {
  double rate = 0.0;
  double mean_latency = 0.0;
  double mean_waiting = 0.0;
  double throughput = 0.0;
  std::uint64_t delivered = 0;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Copy of `cfg` at one injection rate: the bench rate, or every Bernoulli
/// profile's rate, and the run seed derived from the master seed and `index`.
SimConfig at_rate(const SimConfig& cfg, double rate, std::size_t index);

/// One full run per rate. Runs execute in parallel (OpenMP); rows come back
/// in input order and are identical to the serial reference.
std::vector<SweepRow> sweep_injection(const SimConfig& cfg, const std::vector<double>& rates);
std::vector<SweepRow> sweep_injection_serial(const SimConfig& cfg, const std::vector<double>& rates);

/// data_width_bits x clock_frequency_hz x utilization.
double bandwidth(unsigned data_width_bits, double clock_frequency_hz, double utilization);

}  // namespace mtnoc

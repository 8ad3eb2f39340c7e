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

#include "mtnoc/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <random>
#include <set>

namespace mtnoc {

double bandwidth(unsigned data_width_bits, double clock_frequency_hz, double utilization) {
  if (!(utilization >= 0.0 && utilization <= 1.0))
    throw std::invalid_argument("utilization must be within [0, 1]");
  return static_cast<double>(data_width_bits) * clock_frequency_hz * utilization;
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  // 53-bit mantissa draw; platform independent unlike std distributions.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  std::mt19937_64 gen_;
};

struct Generator {
  const TrafficProfile* profile = nullptr;
  FlowId id = 0;
  Rng rng{0};
  std::uint64_t seq = 0;
  std::uint64_t produced = 0;
  std::deque<Payload> pending;  // refused payloads, retried first

  Payload make_payload(unsigned width) {
    const auto& p = *profile;
    Payload out(width);
    switch (p.pattern) {
      case PayloadPattern::Counter:
        out = Payload::from_u64(width, seq);
        if (out.word_count() > 1) out.set_word(1, id);
        break;
      case PayloadPattern::Random:
        for (unsigned w = 0; w < out.word_count(); ++w) out.set_word(w, rng.next());
        break;
      case PayloadPattern::Constant: out = Payload::from_u64(width, p.constant); break;
    }
    ++seq;
    return out;
  }

  /// New payloads offered this cycle (empty while a refused payload is pending).
  std::vector<Payload> offer(Cycle now, unsigned width) {
    std::vector<Payload> out;
    const auto& p = *profile;
    if (now < p.start_cycle || now >= p.stop_cycle) return out;
    if (!pending.empty()) {
      out.assign(pending.begin(), pending.end());
      pending.clear();
      return out;
    }
    switch (p.kind) {
      case TrafficKind::Bernoulli:
        if (rng.bernoulli(p.rate)) out.push_back(make_payload(width));
        break;
      case TrafficKind::Stream:
        if (p.length == 0 || produced < p.length) out.push_back(make_payload(width));
        break;
      case TrafficKind::Burst:
        if ((now - p.start_cycle) % p.period == 0)
          for (unsigned k = 0; k < p.burst_size; ++k) out.push_back(make_payload(width));
        break;
    }
    produced += out.size();
    return out;
  }
};

std::string vr_label(VrNumber n) { return "VR" + std::to_string(n); }

FlowMetrics describe(const TrafficProfile& p, FlowId id) {
  FlowMetrics m;
  m.id = id;
  m.name = p.name.empty() ? "flow" + std::to_string(id) : p.name;
  if (p.source == SourceKind::Host) {
    m.source = "host";
    m.destination = vr_label(p.host_dest_vr);
    m.vi = p.host_vi;
  } else {
    m.source = vr_label(p.src_vr);
    if (p.forged) m.destination = "forged";
    else if (p.direct_to != 0) m.destination = "direct " + vr_label(p.direct_to);
  }
  return m;
}

void check_profile(const TrafficProfile& p, const Topology* topo, std::size_t i) {
  const std::string where = "traffic[" + std::to_string(i) + "]";
  if (p.kind == TrafficKind::Bernoulli && !(p.rate >= 0.0 && p.rate <= 1.0))
    throw ConfigError(where + ": rate must be within [0, 1]");
  if (p.kind == TrafficKind::Burst && (p.period == 0 || p.burst_size == 0))
    throw ConfigError(where + ": burst period and size must be positive");
  if (p.start_cycle > p.stop_cycle) throw ConfigError(where + ": start_cycle after stop_cycle");
  if (topo == nullptr) return;
  if (p.source == SourceKind::Host) {
    if (!topo->has_vr(p.host_dest_vr)) throw ConfigError(where + ": unknown host destination VR");
    if (p.host_vi == 0 || p.host_vi > kMaxViId) throw ConfigError(where + ": host vi outside 1..1023");
    if (p.forged || p.direct_to != 0) throw ConfigError(where + ": host sources cannot be forged or direct");
    return;
  }
  if (!topo->has_vr(p.src_vr)) throw ConfigError(where + ": unknown source VR " + std::to_string(p.src_vr));
  if (p.direct_to != 0 && !topo->has_direct_link(p.src_vr, p.direct_to))
    throw ConfigError(where + ": no direct link " + std::to_string(p.src_vr) + "-" +
                      std::to_string(p.direct_to));
  if (p.forged && p.direct_to != 0) throw ConfigError(where + ": forged traffic uses the NoC");
  if (p.forge_dest && !topo->has_vr(*p.forge_dest)) throw ConfigError(where + ": unknown forge_dest");
  if (p.forge_vi && *p.forge_vi > kMaxViId) throw ConfigError(where + ": forge_vi exceeds 10 bits");
}

std::vector<AllocationEvent> sorted_events(const SimConfig& cfg) {
  auto ev = cfg.events;
  std::stable_sort(ev.begin(), ev.end(),
                   [](const AllocationEvent& a, const AllocationEvent& b) { return a.cycle < b.cycle; });
  return ev;
}

std::vector<VirtualRegion> make_vrs(const Topology& t, const SimConfig& cfg) {
  std::vector<VirtualRegion> v;
  v.reserve(t.vrs.size());
  for (const auto& d : t.vrs) v.emplace_back(d, t.data_width_bits, cfg.queue_capacity, cfg.sink_log_limit);
  return v;
}

}  // namespace

void validate_config(const SimConfig& cfg) {
  if (cfg.cycles == 0) throw ConfigError("sim.cycles must be positive");
  if (cfg.effective_warmup() >= cfg.cycles) throw ConfigError("sim.warmup must be below sim.cycles");
  for (const auto& w : cfg.windows)
    if (w.begin >= w.end) throw ConfigError("window begin must be below end");
  if (cfg.bench) {
    if (cfg.bench->radix != 3 && cfg.bench->radix != 4) throw ConfigError("bench.radix must be 3 or 4");
    if (!(cfg.bench->rate >= 0.0 && cfg.bench->rate <= 1.0))
      throw ConfigError("bench.rate must be within [0, 1]");
    (void)Payload(cfg.topology.data_width_bits);
    return;
  }
  const Topology t = build_topology(cfg.topology);
  if (auto v = validate(t); !v.empty()) throw ConfigError("topology: " + v.front());
  std::set<std::string> names;
  for (std::size_t i = 0; i < cfg.traffic.size(); ++i) {
    check_profile(cfg.traffic[i], &t, i);
    const auto name = describe(cfg.traffic[i], static_cast<FlowId>(i)).name;
    if (!names.insert(name).second) throw ConfigError("duplicate flow name " + name);
  }
  if (cfg.host_latency == 0) throw ConfigError("host_latency must be at least 1 cycle");

  // Dry-run the tenancy timeline so conflicts surface before cycle 0.
  auto vrs = make_vrs(t, cfg);
  TenancyLedger ledger(vrs);
  const auto ev = sorted_events(cfg);
  for (std::size_t i = 0; i < ev.size(); ++i) {
    try {
      ledger.apply(ev[i]);
    } catch (const StateError& e) {
      throw ConfigError("events (cycle " + std::to_string(ev[i].cycle) + ", " +
                        to_string(ev[i].kind) + "): " + e.what());
    }
  }
}

struct Simulation::Impl {
  SimConfig cfg;
  Topology topo;
  std::vector<VirtualRegion> vrs;
  TenancyLedger ledger;
  std::vector<Router> routers;
  std::vector<AllocationEvent> events;
  std::size_t next_event = 0;
  std::vector<Generator> gens;
  std::vector<bool> forged_flow;
  MetricsCollector metrics;
  std::vector<RouterMetrics> router_metrics;

  struct Transit {
    Cycle due;
    VrNumber dst;
    Flit flit;
  };
  std::deque<Transit> direct_transit;
  std::deque<Transit> host_transit;
  Cycle now = 0;
  std::ostream* trace = nullptr;

  explicit Impl(const SimConfig& c)
      : cfg(c),
        topo(build_topology(c.topology)),
        vrs(make_vrs(topo, c)),
        ledger(vrs),
        events(sorted_events(c)),
        metrics(make_flows(c), c.effective_warmup(), c.windows) {
    for (const auto& rc : topo.routers) {
      routers.emplace_back(rc);
      router_metrics.push_back({rc.router_id, rc.radix(), {}, {}});
    }
    for (std::size_t i = 0; i < cfg.traffic.size(); ++i) {
      Generator g;
      g.profile = &cfg.traffic[i];
      g.id = static_cast<FlowId>(i);
      g.rng = Rng(cfg.traffic[i].seed.value_or(derive_seed(cfg.seed, i)));
      gens.push_back(std::move(g));
      forged_flow.push_back(cfg.traffic[i].forged);
    }
  }

  static std::vector<FlowMetrics> make_flows(const SimConfig& c) {
    std::vector<FlowMetrics> f;
    for (std::size_t i = 0; i < c.traffic.size(); ++i) f.push_back(describe(c.traffic[i], static_cast<FlowId>(i)));
    return f;
  }

  VirtualRegion& vr(VrNumber n) { return vrs.at(n - 1); }

  void apply_events() {
    bool any = false;
    while (next_event < events.size() && events[next_event].cycle <= now) {
      ledger.apply(events[next_event++]);
      any = true;
    }
    if (any && cfg.check_invariants) ledger.check_exclusive();
  }

  std::optional<Header> forged_header(Generator& g, const VirtualRegion& src) {
    const auto& p = *g.profile;
    const std::uint16_t vi = p.forge_vi.value_or(src.registers().vi_id);
    VrNumber dst = 0;
    if (p.forge_dest) {
      dst = *p.forge_dest;
    } else {
      std::vector<VrNumber> victims;
      for (const auto& r : vrs)
        if (ledger.owner(r.number()) != vi && r.number() != src.number()) victims.push_back(r.number());
      if (victims.empty()) return std::nullopt;
      dst = victims[g.rng.below(victims.size())];
    }
    return destination_header(dst, vi);
  }

  void generate(Generator& g) {
    const auto& p = *g.profile;
    auto& counts = metrics.counts(g.id);
    const unsigned width = topo.data_width_bits;

    if (p.source == SourceKind::Host) {
      for (auto& payload : g.offer(now, width)) {
        Flit f;
        f.header = destination_header(p.host_dest_vr, p.host_vi);
        f.payload = std::move(payload);
        f.inject_cycle = now;
        f.pull_cycle = now;
        f.flow = g.id;
        f.source_vi = p.host_vi;
        ++counts.injected;
        ++counts.queued;
        host_transit.push_back({now + cfg.host_latency, p.host_dest_vr, std::move(f)});
      }
      return;
    }

    auto& src = vr(p.src_vr);
    if (!p.forged) {
      const bool configured = src.allocated() && (p.direct_to != 0 || src.registers().dest_valid);
      if (!configured) return;
    }
    auto offered = g.offer(now, width);
    for (std::size_t k = 0; k < offered.size(); ++k) {
      EnqueueResult res;
      if (p.forged) {
        auto h = forged_header(g, src);
        if (!h) continue;
        res = src.inject_forged(*h, offered[k], now, g.id);
      } else if (p.direct_to != 0) {
        res = src.inject_direct(p.direct_to, offered[k], now, g.id);
      } else {
        res = src.inject(offered[k], now, g.id);
      }
      ++counts.injected;
      if (res == EnqueueResult::Queued) {
        ++counts.queued;
        auto& fm = metrics.flows()[g.id];
        if (fm.vi == 0) fm.vi = src.registers().vi_id;
      } else {
        ++counts.refused;
        g.pending.assign(offered.begin() + static_cast<std::ptrdiff_t>(k), offered.end());
        break;
      }
    }
  }

  void deliver(VrNumber dst, const Flit& f) {
    auto& target = vr(dst);
    if (target.accept(f, now) == AcceptResult::Delivered) {
      metrics.on_delivered(f, now, f.source_vi != target.registers().vi_id);
    } else {
      metrics.on_denied(f);
    }
  }

  // Whether the stage-2 flit on (r, out) is taken downstream this cycle.
  bool ready(unsigned r, Direction out, const std::vector<InputTargets>& tgt,
             std::vector<std::array<std::int8_t, kPorts>>& memo) {
    if (out == Direction::WestVR || out == Direction::EastVR) return true;
    auto& slot = memo[r][index(out)];
    if (slot >= 0) return slot == 1;
    bool result = true;
    if (routers[r].output_register(out)) {
      const unsigned nr = out == Direction::North ? r + 1 : r - 1;
      const Direction in = out == Direction::North ? Direction::South : Direction::North;
      const auto& t = tgt[nr][index(in)];
      if (t.kind == InputTarget::Kind::Routed) {
        const bool downstream = routers[nr].stage1_free(t.out, ready(nr, t.out, tgt, memo));
        result = downstream && routers[nr].winner(t.out, tgt[nr]) == in;
      }
    }
    slot = result ? 1 : 0;
    return result;
  }

  void write_trace(unsigned r, const Offers& offers, const TickResult& res) {
    *trace << now << ',' << r;
    const auto& ports = routers[r].config().ports;
    for (auto d : kAllDirections) {
      const auto i = index(d);
      if (!ports.has(d)) {
        *trace << ",x,x,x";
        continue;
      }
      const auto hex = [](const Flit* f) { return f ? header_hex(encode_header(f->header)) : std::string("-"); };
      *trace << ',' << hex(offers[i]) << ',' << (res.accepted[i] ? hex(offers[i]) : "-") << ','
             << hex(res.emitted[i] ? &*res.emitted[i] : nullptr);
    }
    *trace << '\n';
  }

  void router_phase() {
    const std::size_t n = routers.size();
    std::vector<std::array<std::optional<Flit>, kPorts>> store(n);
    std::vector<Offers> offers(n);
    std::vector<InputTargets> tgt(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (auto side : {Side::West, Side::East}) {
        auto& q = vr(vr_number(static_cast<unsigned>(r), side));
        const auto in = side == Side::West ? Direction::WestVR : Direction::EastVR;
        if (!q.empty_flag(now)) {
          store[r][index(in)] = q.head();
          store[r][index(in)]->pull_cycle = now;
        }
      }
      if (r + 1 < n) store[r][index(Direction::North)] = routers[r + 1].output_register(Direction::South);
      if (r > 0) store[r][index(Direction::South)] = routers[r - 1].output_register(Direction::North);
      for (auto d : kAllDirections) offers[r][index(d)] = store[r][index(d)] ? &*store[r][index(d)] : nullptr;
      tgt[r] = routers[r].targets(offers[r]);
    }

    std::vector<std::array<std::int8_t, kPorts>> memo(n);
    for (auto& m : memo) m.fill(-1);
    std::vector<OutputFlags> rdy(n);
    for (std::size_t r = 0; r < n; ++r)
      for (auto d : kAllDirections)
        rdy[r][index(d)] = routers[r].config().ports.has(d) && ready(static_cast<unsigned>(r), d, tgt, memo);
    std::vector<TickResult> results(n);
    for (std::size_t r = 0; r < n; ++r) results[r] = routers[r].tick(offers[r], rdy[r]);

    for (std::size_t r = 0; r < n; ++r) {
      const auto& res = results[r];
      auto& rm = router_metrics[r];
      for (auto d : kAllDirections) {
        const auto i = index(d);
        if (res.collision[i]) ++rm.collisions[i];
        if (res.accepted[i] && (d == Direction::WestVR || d == Direction::EastVR)) {
          auto& q = vr(vr_number(static_cast<unsigned>(r), d == Direction::WestVR ? Side::West : Side::East));
          if (!handshake_pull(q.empty_flag(now), true))
            throw InvariantError("allocator granted an EMPTY VR queue");
          (void)q.pull(now);
        }
        if (res.misrouted[i]) metrics.on_misrouted(*offers[r][i]);
        if (!res.emitted[i]) continue;
        ++rm.emitted[i];
        switch (d) {
          case Direction::WestVR: deliver(vr_number(static_cast<unsigned>(r), Side::West), *res.emitted[i]); break;
          case Direction::EastVR: deliver(vr_number(static_cast<unsigned>(r), Side::East), *res.emitted[i]); break;
          case Direction::North:
            if (!results[r + 1].accepted[index(Direction::South)])
              throw InvariantError("flit emitted north was not accepted by router " + std::to_string(r + 1));
            break;
          case Direction::South:
            if (!results[r - 1].accepted[index(Direction::North)])
              throw InvariantError("flit emitted south was not accepted by router " + std::to_string(r - 1));
            break;
        }
      }
      if (trace) write_trace(static_cast<unsigned>(r), offers[r], res);
    }
  }

  void direct_phase() {
    for (auto& q : vrs) {
      if (q.direct_empty_flag(now)) continue;
      const VrNumber peer = q.direct_head_peer();
      direct_transit.push_back({now + 1, peer, q.pull_direct(now)});
    }
  }

  void deliver_transit(std::deque<Transit>& line) {
    // Entries are appended in due order, so only the front can be due.
    while (!line.empty() && line.front().due <= now) {
      deliver(line.front().dst, line.front().flit);
      line.pop_front();
    }
  }

  void check_conservation() {
    std::uint64_t open = 0;
    for (const auto& f : metrics.flows()) {
      if (!f.counts.conserved())
        throw InvariantError("flow " + f.name + " violates conservation at cycle " + std::to_string(now));
      open += f.counts.in_flight();
    }
    std::uint64_t held = direct_transit.size() + host_transit.size();
    for (const auto& q : vrs) held += q.queue_depth();
    for (const auto& r : routers) held += r.in_flight();
    if (open != held)
      throw InvariantError("conservation: " + std::to_string(open) + " flits in flight by count, " +
                           std::to_string(held) + " held at cycle " + std::to_string(now));
  }

  void step() {
    apply_events();
    for (auto& g : gens) generate(g);
    direct_phase();
    router_phase();
    deliver_transit(direct_transit);
    deliver_transit(host_transit);
    for (auto& q : vrs) q.sample_depth();
    if (cfg.check_invariants) check_conservation();
    ++now;
  }

  MetricsReport report() const {
    MetricsReport r;
    r.mode = "topology";
    r.cycles = now;
    r.warmup = cfg.effective_warmup();
    r.seed = cfg.seed;
    r.data_width_bits = topo.data_width_bits;
    r.clock_frequency_hz = topo.clock_frequency_hz;
    r.windows = cfg.windows;
    metrics.finish(r, now, topo.data_width_bits, topo.clock_frequency_hz, forged_flow);
    for (std::size_t i = 0; i < r.flows.size(); ++i) {
      auto& f = r.flows[i];
      const auto& p = cfg.traffic[i];
      if (f.destination.empty()) {
        const auto& regs = vrs[p.src_vr - 1].registers();
        f.destination = regs.dest_valid
                            ? vr_label(2 * regs.dest_router_id + regs.dest_vr_id + 1)
                            : std::string("unconfigured");
      }
    }
    for (const auto& q : vrs)
      r.vrs.push_back({q.number(), q.router_id(), to_string(q.side()), ledger.owner(q.number()),
                       q.counters(), q.sink_hash()});
    std::map<std::uint16_t, ViMetrics> vis;
    for (const auto& [vi, inst] : ledger.instances()) vis[vi].vi = vi;
    for (const auto& f : r.flows) {
      if (f.vi == 0) continue;
      auto& v = vis[f.vi];
      v.vi = f.vi;
      v.delivered += f.counts.delivered;
      v.denied += f.counts.denied;
      v.stats.merge(f.stats);
    }
    for (auto& [vi, m] : vis) r.vis.push_back(m);
    r.routers = router_metrics;
    r.allocation = ledger.allocation_table();
    return r;
  }
};

Simulation::Simulation(const SimConfig& cfg) {
  if (cfg.bench) throw ConfigError("bench configurations run through run_router_bench");
  validate_config(cfg);
  impl_ = std::make_unique<Impl>(cfg);
}
Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

void Simulation::set_trace(std::ostream* out) {
  impl_->trace = out;
  if (out) {
    *out << "cycle,router_id";
    for (auto d : kAllDirections)
      for (const char* col : {"offered", "accepted", "emitted"}) *out << ',' << to_string(d) << '_' << col;
    *out << '\n';
  }
}

void Simulation::step() { impl_->step(); }
void Simulation::run_to_end() {
  while (impl_->now < impl_->cfg.cycles) impl_->step();
}
Cycle Simulation::now() const noexcept { return impl_->now; }
const Topology& Simulation::topology() const noexcept { return impl_->topo; }
const TenancyLedger& Simulation::tenancy() const noexcept { return impl_->ledger; }
const VirtualRegion& Simulation::vr(VrNumber n) const { return impl_->vrs.at(n - 1); }
const Router& Simulation::router(unsigned id) const { return impl_->routers.at(id); }
MetricsReport Simulation::report() const { return impl_->report(); }

MetricsReport run(const SimConfig& cfg, std::ostream* trace) {
  if (cfg.bench) return run_router_bench(cfg, trace);
  Simulation sim(cfg);
  sim.set_trace(trace);
  sim.run_to_end();
  return sim.report();
}

// ---------------------------------------------------------------------------
// Single-router bench

namespace {

std::vector<Direction> bench_ports(unsigned radix) {
  if (radix == 3) return {Direction::South, Direction::WestVR, Direction::EastVR};
  return {Direction::North, Direction::South, Direction::WestVR, Direction::EastVR};
}

constexpr std::uint8_t kBenchRouterId = 1;

VrRegisters bench_target(Direction d) {
  VrRegisters r;
  r.vi_id = 1;
  r.dest_valid = true;
  switch (d) {
    case Direction::North: r.dest_router_id = kBenchRouterId + 1; break;
    case Direction::South: r.dest_router_id = kBenchRouterId - 1; break;
    case Direction::WestVR: r.dest_router_id = kBenchRouterId; r.dest_vr_id = 0; break;
    case Direction::EastVR: r.dest_router_id = kBenchRouterId; r.dest_vr_id = 1; break;
  }
  return r;
}

}  // namespace

MetricsReport run_router_bench(const SimConfig& cfg, std::ostream* trace) {
  validate_config(cfg);
  if (!cfg.bench) throw ConfigError("run_router_bench needs a bench section");
  const auto& b = *cfg.bench;
  const auto ports = bench_ports(b.radix);
  const unsigned k = static_cast<unsigned>(ports.size());
  const unsigned width = cfg.topology.data_width_bits;

  RouterConfig rc;
  rc.router_id = kBenchRouterId;
  rc.ports = PortMap{};
  for (auto d : ports) rc.ports = rc.ports.with(d);
  rc.data_width_bits = width;
  Router router(rc);

  // Source queue on each port, wired to its flow's target port.
  std::vector<VirtualRegion> src;
  for (unsigned i = 0; i < k; ++i)
    src.emplace_back(VrDescriptor{i + 1, kBenchRouterId, Side::West}, width, cfg.queue_capacity, 0);

  std::vector<TrafficProfile> profiles;
  std::vector<FlowMetrics> flows;
  std::vector<std::pair<unsigned, unsigned>> pairs;  // (source port idx, target port idx)
  if (b.pattern == BenchPattern::NoCollision) {
    for (unsigned i = 0; i < k; ++i) pairs.emplace_back(i, (i + 1) % k);
  } else {
    for (unsigned i = 0; i + 1 < k; ++i) pairs.emplace_back(i, k - 1);
  }
  const double per_source = b.pattern == BenchPattern::NoCollision ? b.rate : b.rate / (k - 1);
  profiles.reserve(pairs.size());
  for (auto [s, t] : pairs) {
    TrafficProfile p;
    p.name = std::string(to_string(ports[s])) + "->" + std::string(to_string(ports[t]));
    p.kind = TrafficKind::Bernoulli;
    p.rate = per_source;
    p.src_vr = s + 1;
    profiles.push_back(p);
    src[s].bind_owner(1);
    src[s].configure(bench_target(ports[t]));
    FlowMetrics m;
    m.id = static_cast<FlowId>(flows.size());
    m.name = p.name;
    m.source = "port " + std::string(to_string(ports[s]));
    m.destination = "port " + std::string(to_string(ports[t]));
    m.vi = 1;
    flows.push_back(m);
  }

  MetricsCollector metrics(flows, cfg.effective_warmup(), cfg.windows);
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    Generator g;
    g.profile = &profiles[i];
    g.id = static_cast<FlowId>(i);
    g.rng = Rng(derive_seed(cfg.seed, i));
    gens.push_back(std::move(g));
  }
  std::vector<int> port_slot(kPorts, -1);
  for (unsigned i = 0; i < k; ++i) port_slot[index(ports[i])] = static_cast<int>(i);

  RouterMetrics rm{kBenchRouterId, k, {}, {}};
  const OutputFlags all_ready{true, true, true, true};
  if (trace) {
    *trace << "cycle,router_id";
    for (auto d : kAllDirections)
      for (const char* col : {"offered", "accepted", "emitted"}) *trace << ',' << to_string(d) << '_' << col;
    *trace << '\n';
  }

  for (Cycle now = 0; now < cfg.cycles; ++now) {
    for (auto& g : gens) {
      auto& q = src[g.profile->src_vr - 1];
      auto& counts = metrics.counts(g.id);
      auto offered = g.offer(now, width);
      for (std::size_t j = 0; j < offered.size(); ++j) {
        ++counts.injected;
        if (q.inject(offered[j], now, g.id) == EnqueueResult::Queued) {
          ++counts.queued;
        } else {
          ++counts.refused;
          g.pending.assign(offered.begin() + static_cast<std::ptrdiff_t>(j), offered.end());
          break;
        }
      }
    }

    std::array<std::optional<Flit>, kPorts> store;
    Offers offers{};
    for (unsigned i = 0; i < k; ++i) {
      if (src[i].empty_flag(now)) continue;
      auto& slot = store[index(ports[i])];
      slot = src[i].head();
      slot->pull_cycle = now;
      offers[index(ports[i])] = &*slot;
    }
    const TickResult res = router.tick(offers, all_ready);
    for (auto d : kAllDirections) {
      const auto i = index(d);
      if (res.collision[i]) ++rm.collisions[i];
      if (res.accepted[i]) (void)src[static_cast<unsigned>(port_slot[i])].pull(now);
      if (res.misrouted[i]) metrics.on_misrouted(*offers[i]);
      if (res.emitted[i]) {
        ++rm.emitted[i];
        metrics.on_delivered(*res.emitted[i], now, false);
      }
    }
    if (trace) {
      *trace << now << ',' << unsigned{kBenchRouterId};
      for (auto d : kAllDirections) {
        const auto i = index(d);
        if (!rc.ports.has(d)) {
          *trace << ",x,x,x";
          continue;
        }
        const auto hex = [](const Flit* f) { return f ? header_hex(encode_header(f->header)) : std::string("-"); };
        *trace << ',' << hex(offers[i]) << ',' << (res.accepted[i] ? hex(offers[i]) : "-") << ','
               << hex(res.emitted[i] ? &*res.emitted[i] : nullptr);
      }
      *trace << '\n';
    }

    for (auto& q : src) q.sample_depth();
    if (cfg.check_invariants) {
      std::uint64_t open = 0, held = router.in_flight();
      for (const auto& f : metrics.flows()) {
        if (!f.counts.conserved()) throw InvariantError("bench flow " + f.name + " violates conservation");
        open += f.counts.in_flight();
      }
      for (const auto& q : src) held += q.queue_depth();
      if (open != held) throw InvariantError("bench conservation broken at cycle " + std::to_string(now));
    }
  }

  MetricsReport r;
  r.mode = "bench";
  r.cycles = cfg.cycles;
  r.warmup = cfg.effective_warmup();
  r.seed = cfg.seed;
  r.data_width_bits = width;
  r.clock_frequency_hz = cfg.topology.clock_frequency_hz;
  r.windows = cfg.windows;
  std::vector<bool> forged(flows.size(), false);
  metrics.finish(r, cfg.cycles, width, cfg.topology.clock_frequency_hz, forged);
  r.routers.push_back(rm);
  for (const auto& q : src)
    r.vrs.push_back({q.number(), kBenchRouterId, "port " + std::string(to_string(ports[q.number() - 1])),
                     q.allocated() ? q.registers().vi_id : std::uint16_t{0}, q.counters(), q.sink_hash()});
  ViMetrics vm;
  vm.vi = 1;
  for (const auto& f : r.flows) {
    vm.delivered += f.counts.delivered;
    vm.stats.merge(f.stats);
  }
  r.vis.push_back(vm);
  return r;
}

}  // namespace mtnoc

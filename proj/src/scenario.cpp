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

#include "mtnoc/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mtnoc {

namespace {

using nlohmann::json;

/// A JSON object plus the pointer path used in diagnostics.
class Node {
 public:
  Node(const json& j, std::string path, const std::string& origin)
      : j_(j), path_(std::move(path)), origin_(origin) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ScenarioError(origin_ + ": " + (path_.empty() ? "/" : path_) + ": " + msg);
  }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j_.items())
      if (!ok.count(k)) fail("unknown field \"" + k + "\"");
  }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }
  Node at(const char* key) const {
    if (!has(key)) fail(std::string("missing field \"") + key + "\"");
    return Node(j_.at(key), path_ + "/" + key, origin_);
  }
  Node at(std::size_t i) const { return Node(j_.at(i), path_ + "/" + std::to_string(i), origin_); }
  std::size_t size() const { return j_.size(); }
  const json& raw() const { return j_; }

  std::uint64_t u64() const {
    if (j_.is_number_unsigned()) return j_.get<std::uint64_t>();
    if (j_.is_number_integer() && j_.get<std::int64_t>() >= 0) return j_.get<std::uint64_t>();
    if (j_.is_number_float()) {
      const double d = j_.get<double>();
      if (d >= 0 && d == static_cast<double>(static_cast<std::uint64_t>(d)))
        return static_cast<std::uint64_t>(d);
    }
    fail("expected a non-negative integer");
  }
  unsigned u32(std::uint64_t max = 0xFFFFFFFFull) const {
    const auto v = u64();
    if (v > max) fail("value " + std::to_string(v) + " exceeds " + std::to_string(max));
    return static_cast<unsigned>(v);
  }
  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }
  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }
  void expect_array() const {
    if (!j_.is_array()) fail("expected an array");
  }

 private:
  const json& j_;
  std::string path_;
  const std::string& origin_;
};

TopologyConfig parse_topology(const Node& n) {
  n.expect_object({"flavor", "columns", "routers_per_column", "data_width_bits",
                   "clock_frequency_hz", "direct_links"});
  TopologyConfig t;
  if (n.has("flavor")) {
    const auto f = n.at("flavor").str();
    if (f == "single") t.flavor = Flavor::SingleColumn;
    else if (f == "double") t.flavor = Flavor::DoubleColumn;
    else if (f == "multi") t.flavor = Flavor::MultiColumn;
    else n.at("flavor").fail("flavor must be single, double or multi");
  }
  if (n.has("columns")) t.columns = n.at("columns").u32(1024);
  t.routers_per_column = n.at("routers_per_column").u32(1024);
  if (n.has("data_width_bits")) t.data_width_bits = n.at("data_width_bits").u32(Payload::kMaxBits);
  if (n.has("clock_frequency_hz")) t.clock_frequency_hz = n.at("clock_frequency_hz").number();
  if (n.has("direct_links")) {
    const auto links = n.at("direct_links");
    links.expect_array();
    for (std::size_t i = 0; i < links.size(); ++i) {
      const auto l = links.at(i);
      l.expect_array();
      if (l.size() != 2) l.fail("direct link must be a [vr, vr] pair");
      t.direct_links.emplace_back(l.at(std::size_t{0}).u32(), l.at(std::size_t{1}).u32());
    }
  }
  return t;
}

BenchConfig parse_bench(const Node& n) {
  n.expect_object({"radix", "pattern", "rate"});
  BenchConfig b;
  if (n.has("radix")) b.radix = n.at("radix").u32(16);
  if (n.has("pattern")) {
    const auto p = n.at("pattern").str();
    if (p == "no_collision") b.pattern = BenchPattern::NoCollision;
    else if (p == "collision") b.pattern = BenchPattern::Collision;
    else n.at("pattern").fail("pattern must be no_collision or collision");
  }
  if (n.has("rate")) b.rate = n.at("rate").number();
  return b;
}

TrafficProfile parse_profile(const Node& n) {
  n.expect_object({"name", "kind", "rate", "length", "period", "size", "src_vr", "src", "dest_vr",
                   "vi", "direct_to", "forged", "payload", "seed", "start", "stop"});
  TrafficProfile p;
  if (n.has("name")) p.name = n.at("name").str();
  const auto kind = n.has("kind") ? n.at("kind").str() : std::string("bernoulli");
  if (kind == "bernoulli") {
    p.kind = TrafficKind::Bernoulli;
    p.rate = n.at("rate").number();
  } else if (kind == "stream") {
    p.kind = TrafficKind::Stream;
    if (n.has("length")) p.length = n.at("length").u64();
  } else if (kind == "burst") {
    p.kind = TrafficKind::Burst;
    p.period = n.at("period").u64();
    p.burst_size = n.at("size").u32();
  } else {
    n.at("kind").fail("kind must be bernoulli, stream or burst");
  }

  if (n.has("src") && n.at("src").str() != "vr") {
    if (n.at("src").str() != "host") n.at("src").fail("src must be \"vr\" or \"host\"");
    p.source = SourceKind::Host;
    p.host_dest_vr = n.at("dest_vr").u32();
    p.host_vi = static_cast<std::uint16_t>(n.at("vi").u32(kMaxViId));
  } else {
    p.src_vr = n.at("src_vr").u32();
    if (n.has("dest_vr") || n.has("vi"))
      n.fail("VR sources take their destination from the VR registers; use a wire/extend/configure event");
  }
  if (n.has("direct_to")) p.direct_to = n.at("direct_to").u32();
  if (n.has("forged")) {
    const auto f = n.at("forged");
    if (f.raw().is_boolean()) {
      p.forged = f.boolean();
    } else {
      f.expect_object({"vi", "dest_vr"});
      p.forged = true;
      if (f.has("vi")) p.forge_vi = static_cast<std::uint16_t>(f.at("vi").u32(kMaxViId));
      if (f.has("dest_vr")) p.forge_dest = f.at("dest_vr").u32();
    }
  }
  if (n.has("payload")) {
    const auto pl = n.at("payload");
    if (pl.raw().is_string()) {
      const auto s = pl.str();
      if (s == "counter") p.pattern = PayloadPattern::Counter;
      else if (s == "random") p.pattern = PayloadPattern::Random;
      else pl.fail("payload must be \"counter\", \"random\" or {\"constant\": N}");
    } else {
      pl.expect_object({"constant"});
      p.pattern = PayloadPattern::Constant;
      p.constant = pl.at("constant").u64();
    }
  }
  if (n.has("seed")) p.seed = n.at("seed").u64();
  if (n.has("start")) p.start_cycle = n.at("start").u64();
  if (n.has("stop")) p.stop_cycle = n.at("stop").u64();
  return p;
}

AllocationEvent parse_event(const Node& n) {
  n.expect_object({"cycle", "kind", "vi", "vr", "src_vr", "dst_vr", "dest_router", "dest_vr_side"});
  AllocationEvent e;
  if (n.has("cycle")) e.cycle = n.at("cycle").u64();
  const auto kind = n.at("kind").str();
  const auto vi = [&] { return static_cast<std::uint16_t>(n.at("vi").u32(kMaxViId)); };
  if (kind == "allocate" || kind == "release") {
    e.kind = kind == "allocate" ? EventKind::Allocate : EventKind::Release;
    e.vi = vi();
    e.vr = n.at("vr").u32();
  } else if (kind == "extend") {
    e.kind = EventKind::Extend;
    e.vi = vi();
    e.vr = n.at("vr").u32();
    e.src_vr = n.at("src_vr").u32();
  } else if (kind == "wire") {
    e.kind = EventKind::Wire;
    e.vi = vi();
    e.src_vr = n.at("src_vr").u32();
    e.vr = n.at("dst_vr").u32();
  } else if (kind == "configure") {
    e.kind = EventKind::Configure;
    e.vr = n.at("vr").u32();
    e.dest_router = static_cast<std::uint8_t>(n.at("dest_router").u32(kMaxRouterId));
    e.dest_vr_side = static_cast<std::uint8_t>(n.at("dest_vr_side").u32(kMaxVrId));
  } else {
    n.at("kind").fail("kind must be allocate, release, extend, wire or configure");
  }
  return e;
}

void parse_sim(const Node& n, SimConfig& cfg) {
  n.expect_object({"cycles", "seed", "warmup", "queue_capacity", "host_latency", "windows",
                   "sink_log_limit", "check_invariants"});
  cfg.cycles = n.at("cycles").u64();
  if (n.has("seed")) cfg.seed = n.at("seed").u64();
  if (n.has("warmup")) cfg.warmup = n.at("warmup").u64();
  if (n.has("queue_capacity")) cfg.queue_capacity = n.at("queue_capacity").u64();
  if (n.has("host_latency")) cfg.host_latency = n.at("host_latency").u64();
  if (n.has("sink_log_limit")) cfg.sink_log_limit = n.at("sink_log_limit").u64();
  if (n.has("check_invariants")) cfg.check_invariants = n.at("check_invariants").boolean();
  if (n.has("windows")) {
    const auto w = n.at("windows");
    w.expect_array();
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto p = w.at(i);
      p.expect_array();
      if (p.size() != 2) p.fail("window must be a [begin, end) pair");
      cfg.windows.push_back({p.at(std::size_t{0}).u64(), p.at(std::size_t{1}).u64()});
    }
  }
}

}  // namespace

SimConfig parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports "... at line L, column C: ..." in what().
    throw ScenarioError(origin + ": " + e.what());
  }
  const Node root(doc, "", origin);
  root.expect_object({"schema_version", "topology", "bench", "traffic", "events", "sim"});
  const auto version = root.at("schema_version").u32();
  if (version != kScenarioSchemaVersion)
    root.at("schema_version").fail("unsupported schema_version " + std::to_string(version));

  SimConfig cfg;
  if (root.has("topology")) cfg.topology = parse_topology(root.at("topology"));
  if (root.has("bench")) {
    cfg.bench = parse_bench(root.at("bench"));
    if (root.has("traffic") || root.has("events"))
      root.fail("bench scenarios generate their own traffic; drop traffic/events");
  } else if (!root.has("topology")) {
    root.fail("scenario needs a topology or a bench section");
  }
  if (root.has("traffic")) {
    const auto t = root.at("traffic");
    t.expect_array();
    for (std::size_t i = 0; i < t.size(); ++i) cfg.traffic.push_back(parse_profile(t.at(i)));
  }
  if (root.has("events")) {
    const auto e = root.at("events");
    e.expect_array();
    for (std::size_t i = 0; i < e.size(); ++i) cfg.events.push_back(parse_event(e.at(i)));
  }
  parse_sim(root.at("sim"), cfg);
  return cfg;
}

SimConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

}  // namespace mtnoc

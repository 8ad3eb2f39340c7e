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

#include "mtnoc/topology.hpp"

#include <algorithm>
#include <set>

namespace mtnoc {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::SingleColumn: return "single";
    case Flavor::DoubleColumn: return "double";
    case Flavor::MultiColumn: return "multi";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::West ? "West" : "East"; }

Header destination_header(VrNumber dst, std::uint16_t vi_id) {
  return Header{vi_id, static_cast<std::uint8_t>(vr_router(dst)),
                static_cast<std::uint8_t>(vr_side(dst))};
}

const VrDescriptor& Topology::vr(VrNumber n) const {
  if (!has_vr(n)) throw ConfigError("unknown VR " + std::to_string(n));
  return vrs[n - 1];
}

bool Topology::has_vr(VrNumber n) const noexcept {
  return n >= 1 && n <= vrs.size() && vrs[n - 1].number == n;
}

bool Topology::has_direct_link(VrNumber a, VrNumber b) const noexcept {
  return std::any_of(direct_links.begin(), direct_links.end(), [&](const DirectLink& l) {
    return (l.a == a && l.b == b) || (l.a == b && l.b == a);
  });
}

namespace {

PortMap chain_ports(unsigned i, unsigned n) {
  PortMap p = PortMap::all();
  if (i == 0) p = p.without(Direction::South);
  if (i + 1 == n) p = p.without(Direction::North);
  return p;
}

bool adjacent(const Topology& t, VrNumber a, VrNumber b) {
  const auto adj = adjacent_vrs(t, a);
  return std::find(adj.begin(), adj.end(), b) != adj.end();
}

}  // namespace

Topology build_topology(const TopologyConfig& cfg) {
  unsigned columns = cfg.columns;
  if (cfg.flavor == Flavor::SingleColumn) columns = 1;
  if (cfg.flavor == Flavor::DoubleColumn) columns = 2;
  if (cfg.flavor == Flavor::MultiColumn && columns < 2)
    throw ConfigError("multi-column flavor needs at least 2 columns");
  if (cfg.routers_per_column == 0) throw ConfigError("routers_per_column must be positive");
  const unsigned n = columns * cfg.routers_per_column;
  if (n > kMaxRouters)
    throw ConfigError("capacity: " + std::to_string(n) + " routers exceed the 5-bit ROUTER_ID (" +
                      std::to_string(kMaxRouters) + ")");
  // Payload construction enforces the width range.
  (void)Payload(cfg.data_width_bits);
  if (!(cfg.clock_frequency_hz > 0)) throw ConfigError("clock_frequency_hz must be positive");

  Topology t;
  t.flavor = cfg.flavor;
  t.columns = columns;
  t.routers_per_column = cfg.routers_per_column;
  t.data_width_bits = cfg.data_width_bits;
  t.clock_frequency_hz = cfg.clock_frequency_hz;
  for (unsigned i = 0; i < n; ++i) {
    t.routers.push_back(
        RouterConfig{static_cast<std::uint8_t>(i), chain_ports(i, n), cfg.data_width_bits});
    t.vrs.push_back({vr_number(i, Side::West), static_cast<std::uint8_t>(i), Side::West});
    t.vrs.push_back({vr_number(i, Side::East), static_cast<std::uint8_t>(i), Side::East});
    if (i + 1 < n)
      t.links.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i + 1),
                         (i + 1) % cfg.routers_per_column == 0});
  }
  for (const auto& [a, b] : cfg.direct_links) {
    if (!t.has_vr(a) || !t.has_vr(b))
      throw ConfigError("direct link " + std::to_string(a) + "-" + std::to_string(b) +
                        " names an unknown VR");
    if (!adjacent(t, a, b))
      throw ConfigError("direct link " + std::to_string(a) + "-" + std::to_string(b) +
                        " joins non-adjacent VRs");
    if (t.has_direct_link(a, b))
      throw ConfigError("duplicate direct link " + std::to_string(a) + "-" + std::to_string(b));
    t.direct_links.push_back({a, b});
  }
  return t;
}

std::vector<std::string> validate(const Topology& t) {
  std::vector<std::string> v;
  const std::size_t n = t.routers.size();
  if (n == 0) v.emplace_back("topology has no routers");
  if (n > kMaxRouters)
    v.push_back("ID width: " + std::to_string(n) + " routers exceed the 5-bit ROUTER_ID");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = t.routers[i];
    if (r.router_id != i)
      v.push_back("router at position " + std::to_string(i) + " has id " +
                  std::to_string(r.router_id) + " (ids must be contiguous 0..N-1)");
    const PortMap expect = chain_ports(static_cast<unsigned>(i), static_cast<unsigned>(n));
    if (r.ports != expect)
      v.push_back("router " + std::to_string(r.router_id) + " has radix " +
                  std::to_string(r.radix()) + ", expected " + std::to_string(expect.size()));
  }

  std::set<std::pair<unsigned, unsigned>> links;
  for (const auto& l : t.links) {
    if (l.upper != l.lower + 1)
      v.push_back("non-contiguous chain: router " + std::to_string(l.lower) + " linked to router " +
                  std::to_string(l.upper));
    else if (!links.insert({l.lower, l.upper}).second)
      v.push_back("duplicate link " + std::to_string(l.lower) + "-" + std::to_string(l.upper));
    if (l.upper >= n || l.lower >= n)
      v.push_back("link " + std::to_string(l.lower) + "-" + std::to_string(l.upper) +
                  " references a missing router");
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!links.count({static_cast<unsigned>(i), static_cast<unsigned>(i + 1)}))
      v.push_back("missing chain link " + std::to_string(i) + "-" + std::to_string(i + 1));

  if (t.vrs.size() > 2 * n)
    v.push_back("VR count " + std::to_string(t.vrs.size()) + " exceeds 2 x router count");
  std::set<std::pair<unsigned, unsigned>> sides;
  for (std::size_t k = 0; k < t.vrs.size(); ++k) {
    const auto& d = t.vrs[k];
    if (d.number != k + 1) v.push_back("VR numbers must be 1..M in order");
    if (d.router_id >= n) v.push_back("VR " + std::to_string(d.number) + " bound to missing router");
    if (!sides.insert({d.router_id, static_cast<unsigned>(d.side)}).second)
      v.push_back("router " + std::to_string(d.router_id) + " " + to_string(d.side) +
                  " side hosts two VRs");
  }
  for (const auto& l : t.direct_links) {
    if (!t.has_vr(l.a) || !t.has_vr(l.b) || !adjacent(t, l.a, l.b))
      v.push_back("direct link " + std::to_string(l.a) + "-" + std::to_string(l.b) +
                  " joins non-adjacent VRs");
  }
  return v;
}

std::vector<VrNumber> adjacent_vrs(const Topology& t, VrNumber vr) {
  const auto& d = t.vr(vr);
  std::vector<VrNumber> out;
  const unsigned r = d.router_id;
  const unsigned col = t.column_of(r);
  if (r > 0 && t.column_of(r - 1) == col) out.push_back(vr_number(r - 1, d.side));
  if (r + 1 < t.routers.size() && t.column_of(r + 1) == col) out.push_back(vr_number(r + 1, d.side));
  out.push_back(vr_number(r, d.side == Side::West ? Side::East : Side::West));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<unsigned> route_path(const Topology& t, VrNumber src, VrNumber dst) {
  const auto& s = t.vr(src);
  const Header h = destination_header(t.vr(dst).number, 0);
  std::vector<unsigned> path{s.router_id};
  Direction arrival = s.side == Side::West ? Direction::WestVR : Direction::EastVR;
  for (;;) {
    const auto& rc = t.routers.at(path.back());
    const auto d = checked_route(rc, h, arrival);
    if (!d) throw ConfigError("route from VR " + std::to_string(src) + " to VR " +
                              std::to_string(dst) + " leaves the chain");
    if (*d == Direction::WestVR || *d == Direction::EastVR) return path;
    if (*d == Direction::North) {
      path.push_back(path.back() + 1);
      arrival = Direction::South;
    } else {
      path.push_back(path.back() - 1);
      arrival = Direction::North;
    }
  }
}

}  // namespace mtnoc

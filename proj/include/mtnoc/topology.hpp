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
#include <utility>
#include <vector>

#include "mtnoc/common.hpp"
#include "mtnoc/router.hpp"

namespace mtnoc {

enum class Flavor : std::uint8_t { SingleColumn, DoubleColumn, MultiColumn };

enum class Side : std::uint8_t { West = 0, East = 1 };

inline constexpr unsigned kMaxRouters = kMaxRouterId + 1;

struct TopologyConfig {
  Flavor flavor = Flavor::SingleColumn;
  unsigned columns = 1;  // forced to 1 / 2 for single / double column
  unsigned routers_per_column = 3;
  unsigned data_width_bits = 32;
  double clock_frequency_hz = 800e6;
  std::vector<std::pair<VrNumber, VrNumber>> direct_links;
};

struct VrDescriptor {
  VrNumber number = 0;
  std::uint8_t router_id = 0;
  Side side = Side::West;
};

struct RouterLink {
  std::uint8_t lower = 0;  // router below (South end of the link)
  std::uint8_t upper = 0;  // router above (North end of the link)
  bool column_edge = false;  // fold link joining two columns
};

struct DirectLink {
  VrNumber a = 0;
  VrNumber b = 0;
};

/// Column-chain NoC. Router ids are the global 1-D routing order even when the
/// chain is folded over several columns.
struct Topology {
  Flavor flavor = Flavor::SingleColumn;
  unsigned columns = 1;
  unsigned routers_per_column = 0;
  unsigned data_width_bits = 32;
  double clock_frequency_hz = 800e6;
  std::vector<RouterConfig> routers;
  std::vector<VrDescriptor> vrs;
  std::vector<RouterLink> links;
  std::vector<DirectLink> direct_links;

  std::size_t router_count() const noexcept { return routers.size(); }
  unsigned column_of(unsigned router_id) const noexcept {
    return routers_per_column == 0 ? 0 : router_id / routers_per_column;
  }
  const VrDescriptor& vr(VrNumber n) const;
  bool has_vr(VrNumber n) const noexcept;
  bool has_direct_link(VrNumber a, VrNumber b) const noexcept;
};

constexpr VrNumber vr_number(unsigned router_id, Side side) noexcept {
  return 2 * router_id + static_cast<unsigned>(side) + 1;
}
constexpr unsigned vr_router(VrNumber n) noexcept { return (n - 1) / 2; }
constexpr Side vr_side(VrNumber n) noexcept { return static_cast<Side>((n - 1) % 2); }

std::string to_string(Flavor f);
std::string to_string(Side s);
Header destination_header(VrNumber dst, std::uint16_t vi_id);

Topology build_topology(const TopologyConfig& cfg);

/// Every broken structural invariant, one message each. Empty iff valid.
std::vector<std::string> validate(const Topology& t);

/// VRs that may hold a direct link with `vr`: same side of a vertically
/// adjacent router in the same column, and the opposite side of its own router.
std::vector<VrNumber> adjacent_vrs(const Topology& t, VrNumber vr);

/// Routers visited by a flit from `src` to `dst`, endpoints included, found by
/// applying the routing decision hop by hop. Throws if the walk leaves the chain.
std::vector<unsigned> route_path(const Topology& t, VrNumber src, VrNumber dst);

}  // namespace mtnoc

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

#include <doctest.h>

#include "mtnoc/tenancy.hpp"
#include "mtnoc/topology.hpp"

using namespace mtnoc;

namespace {

struct Fixture {
  Topology topo;
  std::vector<VirtualRegion> vrs;
  TenancyLedger ledger;

  explicit Fixture(unsigned routers = 3)
      : topo(build_topology(TopologyConfig{Flavor::SingleColumn, 1, routers, 32, 800e6, {}})),
        vrs(make(topo)),
        ledger(vrs) {}

  static std::vector<VirtualRegion> make(const Topology& t) {
    std::vector<VirtualRegion> v;
    for (const auto& d : t.vrs) v.emplace_back(d, t.data_width_bits);
    return v;
  }
  VirtualRegion& vr(VrNumber n) { return vrs.at(n - 1); }
};

}  // namespace

TEST_CASE("case-study allocation map") {
  Fixture f;
  f.ledger.allocate_vr(1, 1);
  f.ledger.allocate_vr(2, 2);
  f.ledger.allocate_vr(3, 3);
  f.ledger.allocate_vr(3, 4);
  f.ledger.allocate_vr(4, 5);
  f.ledger.allocate_vr(5, 6);
  CHECK_NOTHROW(f.ledger.check_exclusive());
  CHECK(f.ledger.instances().size() == 5);
  CHECK(f.ledger.instances().at(3).allocated_vrs == std::set<VrNumber>{3, 4});
  const auto table = f.ledger.allocation_table();
  const std::vector<std::pair<VrNumber, std::uint16_t>> expect{{1, 1}, {2, 2}, {3, 3}, {4, 3}, {5, 4}, {6, 5}};
  CHECK(table == expect);
  for (VrNumber n = 1; n <= 6; ++n) CHECK(f.vr(n).registers().vi_id == f.ledger.owner(n));
}

TEST_CASE("allocation conflicts and bad ids") {
  Fixture f;
  f.ledger.allocate_vr(1, 1);
  CHECK_THROWS_AS(f.ledger.allocate_vr(1, 1), StateError);
  CHECK_THROWS_AS(f.ledger.allocate_vr(2, 1), StateError);
  CHECK_THROWS_AS(f.ledger.allocate_vr(0, 2), StateError);
  CHECK_THROWS_AS(f.ledger.allocate_vr(1024, 2), StateError);
  CHECK_THROWS_AS(f.ledger.allocate_vr(1, 7), StateError);
  CHECK_NOTHROW(f.ledger.allocate_vr(1023, 2));
}

TEST_CASE("release and reallocate") {
  Fixture f;
  f.ledger.allocate_vr(1, 1);
  CHECK_THROWS_AS(f.ledger.release_vr(2, 1), StateError);
  CHECK_THROWS_AS(f.ledger.release_vr(1, 2), StateError);
  f.ledger.release_vr(1, 1);
  CHECK(f.ledger.owner(1) == kUnallocatedVi);
  CHECK(f.ledger.instances().empty());
  CHECK_FALSE(f.vr(1).allocated());
  f.ledger.allocate_vr(2, 1);
  CHECK(f.ledger.owner(1) == 2);
  CHECK_NOTHROW(f.ledger.check_exclusive());
}

TEST_CASE("elastic extend wires the new region") {
  Fixture f;
  f.ledger.allocate_vr(3, 3);
  f.ledger.elastic_extend(3, 4, 3);
  CHECK(f.ledger.owner(4) == 3);
  const auto& r = f.vr(3).registers();
  CHECK(r.dest_valid);
  CHECK(r.dest_router_id == 1);
  CHECK(r.dest_vr_id == 1);
  f.vr(3).inject(Payload::from_u64(32, 1), 0, 0);
  CHECK(f.vr(3).head().header == Header{3, 1, 1});
}

TEST_CASE("extend to a region two routers away") {
  Fixture f;
  f.ledger.allocate_vr(3, 1);
  f.ledger.elastic_extend(3, 5, 1);
  const auto path = route_path(f.topo, 1, 5);
  CHECK(path == std::vector<unsigned>{0, 1, 2});
  CHECK(path.size() - 1 == 2);
}

TEST_CASE("wiring never crosses tenants") {
  Fixture f;
  f.ledger.allocate_vr(2, 1);
  f.ledger.allocate_vr(3, 3);
  CHECK_THROWS_AS(f.ledger.elastic_extend(3, 2, 1), IsolationError);
  CHECK(f.ledger.owner(2) == kUnallocatedVi);
  CHECK_THROWS_AS(f.ledger.wire(3, 3, 1), IsolationError);
  CHECK_THROWS_AS(f.ledger.wire(2, 3, 1), IsolationError);
  CHECK_THROWS_AS(f.ledger.wire(3, 3, 3), StateError);
}

TEST_CASE("events dispatch to the ledger") {
  Fixture f;
  f.ledger.apply({0, EventKind::Allocate, 7, 2, 0, 0, 0});
  f.ledger.apply({0, EventKind::Extend, 7, 6, 2, 0, 0});
  CHECK(f.vr(2).registers().dest_router_id == 2);
  f.ledger.apply({0, EventKind::Configure, 0, 2, 0, 0, 1});
  CHECK(f.vr(2).registers().dest_router_id == 0);
  CHECK(f.vr(2).registers().dest_vr_id == 1);
  f.ledger.apply({0, EventKind::Wire, 7, 6, 2, 0, 0});
  CHECK(f.vr(6).registers().dest_router_id == 0);
  f.ledger.apply({0, EventKind::Release, 7, 6, 0, 0, 0});
  CHECK(f.ledger.owner(6) == kUnallocatedVi);
  CHECK(to_string(EventKind::Extend) == "extend");
}

TEST_CASE("check_exclusive catches a register written behind the ledger") {
  Fixture f;
  f.vr(4).bind_owner(9);
  CHECK_THROWS_AS(f.ledger.check_exclusive(), InvariantError);
}

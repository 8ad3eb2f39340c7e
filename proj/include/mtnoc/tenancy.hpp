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
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtnoc/common.hpp"
#include "mtnoc/vregion.hpp"

namespace mtnoc {

/// A tenant's VR set crossed a VI boundary.
class IsolationError : public StateError {
 public:
  using StateError::StateError;
};

struct VirtualInstance {
  std::uint16_t vi_id = 0;
  std::set<VrNumber> allocated_vrs;
};

enum class EventKind : std::uint8_t { Allocate, Release, Extend, Wire, Configure };

std::string to_string(EventKind k);

/// One hypervisor action on the timeline. Field use per kind:
///   Allocate/Release: vi, vr
///   Extend:           vi, vr (new region), src_vr (region streaming into it)
///   Wire:             vi, src_vr -> vr
///   Configure:        vr, dest_router, dest_vr_side (raw register write)
struct AllocationEvent {
  Cycle cycle = 0;
  EventKind kind = EventKind::Allocate;
  std::uint16_t vi = 0;
  VrNumber vr = 0;
  VrNumber src_vr = 0;
  std::uint8_t dest_router = 0;
  std::uint8_t dest_vr_side = 0;
};

/// Device-side allocation state. Owns no VRs; it writes their registers.
class TenancyLedger {
 public:
  explicit TenancyLedger(std::span<VirtualRegion> vrs) : vrs_(vrs) {}

  void allocate_vr(std::uint16_t vi, VrNumber vr);
  void release_vr(std::uint16_t vi, VrNumber vr);
  void elastic_extend(std::uint16_t vi, VrNumber new_vr, VrNumber src_vr);
  void wire(std::uint16_t vi, VrNumber src_vr, VrNumber dst_vr);
  void configure(VrNumber vr, std::uint8_t dest_router, std::uint8_t dest_vr_side);

  void apply(const AllocationEvent& e);

  /// kUnallocatedVi when free.
  std::uint16_t owner(VrNumber vr) const;
  const std::map<std::uint16_t, VirtualInstance>& instances() const noexcept { return vis_; }
  /// (VR, owner) for every VR, owner 0 when free.
  std::vector<std::pair<VrNumber, std::uint16_t>> allocation_table() const;

  /// Throws InvariantError if any VR is claimed twice or registers disagree.
  void check_exclusive() const;

 private:
  VirtualRegion& region(VrNumber vr);
  const VirtualRegion& region(VrNumber vr) const;

  std::span<VirtualRegion> vrs_;
  std::map<std::uint16_t, VirtualInstance> vis_;
};

}  // namespace mtnoc

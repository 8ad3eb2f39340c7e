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

#include "mtnoc/tenancy.hpp"

namespace mtnoc {

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Allocate: return "allocate";
    case EventKind::Release: return "release";
    case EventKind::Extend: return "extend";
    case EventKind::Wire: return "wire";
    case EventKind::Configure: return "configure";
  }
  return "?";
}

VirtualRegion& TenancyLedger::region(VrNumber vr) {
  if (vr < 1 || vr > vrs_.size()) throw StateError("unknown VR " + std::to_string(vr));
  return vrs_[vr - 1];
}

const VirtualRegion& TenancyLedger::region(VrNumber vr) const {
  if (vr < 1 || vr > vrs_.size()) throw StateError("unknown VR " + std::to_string(vr));
  return vrs_[vr - 1];
}

std::uint16_t TenancyLedger::owner(VrNumber vr) const {
  const auto& r = region(vr);
  return r.allocated() ? r.registers().vi_id : kUnallocatedVi;
}

void TenancyLedger::allocate_vr(std::uint16_t vi, VrNumber vr) {
  auto& r = region(vr);
  if (vi == kUnallocatedVi || vi > kMaxViId)
    throw StateError("VI id " + std::to_string(vi) + " outside 1..1023");
  if (r.allocated())
    throw StateError("allocation conflict: VR " + std::to_string(vr) + " already owned by VI " +
                     std::to_string(r.registers().vi_id));
  r.bind_owner(vi);
  auto& inst = vis_[vi];
  inst.vi_id = vi;
  inst.allocated_vrs.insert(vr);
}

void TenancyLedger::release_vr(std::uint16_t vi, VrNumber vr) {
  auto& r = region(vr);
  auto it = vis_.find(vi);
  if (it == vis_.end() || !it->second.allocated_vrs.count(vr))
    throw StateError("VI " + std::to_string(vi) + " does not own VR " + std::to_string(vr));
  r.unbind_owner();
  it->second.allocated_vrs.erase(vr);
  if (it->second.allocated_vrs.empty()) vis_.erase(it);
  // Anyone still streaming into the released VR keeps its header; those
  // flits are denied at the monitor.
}

void TenancyLedger::wire(std::uint16_t vi, VrNumber src_vr, VrNumber dst_vr) {
  if (owner(src_vr) != vi || owner(dst_vr) != vi)
    throw IsolationError("wire " + std::to_string(src_vr) + "->" + std::to_string(dst_vr) +
                         " crosses VI boundaries (VI " + std::to_string(vi) + ")");
  if (src_vr == dst_vr) throw StateError("VR " + std::to_string(src_vr) + " cannot stream to itself");
  auto& src = region(src_vr);
  const auto& dst = region(dst_vr);
  VrRegisters regs = src.registers();
  regs.dest_router_id = dst.router_id();
  regs.dest_vr_id = static_cast<std::uint8_t>(dst.side());
  regs.dest_valid = true;
  src.configure(regs);
}

void TenancyLedger::elastic_extend(std::uint16_t vi, VrNumber new_vr, VrNumber src_vr) {
  if (owner(src_vr) != vi)
    throw IsolationError("VI " + std::to_string(vi) + " does not own source VR " +
                         std::to_string(src_vr));
  allocate_vr(vi, new_vr);
  wire(vi, src_vr, new_vr);
}

void TenancyLedger::configure(VrNumber vr, std::uint8_t dest_router, std::uint8_t dest_vr_side) {
  auto& r = region(vr);
  VrRegisters regs = r.registers();
  regs.dest_router_id = dest_router;
  regs.dest_vr_id = dest_vr_side;
  regs.dest_valid = true;
  r.configure(regs);
}

void TenancyLedger::apply(const AllocationEvent& e) {
  switch (e.kind) {
    case EventKind::Allocate: allocate_vr(e.vi, e.vr); break;
    case EventKind::Release: release_vr(e.vi, e.vr); break;
    case EventKind::Extend: elastic_extend(e.vi, e.vr, e.src_vr); break;
    case EventKind::Wire: wire(e.vi, e.src_vr, e.vr); break;
    case EventKind::Configure: configure(e.vr, e.dest_router, e.dest_vr_side); break;
  }
}

std::vector<std::pair<VrNumber, std::uint16_t>> TenancyLedger::allocation_table() const {
  std::vector<std::pair<VrNumber, std::uint16_t>> t;
  for (const auto& r : vrs_) t.emplace_back(r.number(), owner(r.number()));
  return t;
}

void TenancyLedger::check_exclusive() const {
  std::set<VrNumber> seen;
  for (const auto& [vi, inst] : vis_) {
    for (VrNumber vr : inst.allocated_vrs) {
      if (!seen.insert(vr).second)
        throw InvariantError("VR " + std::to_string(vr) + " owned by two VIs");
      if (owner(vr) != vi)
        throw InvariantError("VR " + std::to_string(vr) + " VI_ID register disagrees with ledger");
    }
  }
  for (const auto& r : vrs_)
    if (r.allocated() && !seen.count(r.number()))
      throw InvariantError("VR " + std::to_string(r.number()) + " allocated outside the ledger");
}

}  // namespace mtnoc

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

#include "mtnoc/vregion.hpp"

#include <algorithm>

namespace mtnoc {

VirtualRegion::VirtualRegion(const VrDescriptor& d, unsigned data_width_bits,
                             std::size_t queue_capacity, std::size_t sink_log_limit)
    : desc_(d), width_(data_width_bits), capacity_(queue_capacity), sink_limit_(sink_log_limit) {
  (void)Payload(data_width_bits);
}

void VirtualRegion::bind_owner(std::uint16_t vi_id) {
  if (vi_id == kUnallocatedVi || vi_id > kMaxViId)
    throw StateError("VR " + std::to_string(number()) + ": invalid owner VI " +
                     std::to_string(vi_id));
  allocated_ = true;
  regs_ = VrRegisters{};
  regs_.vi_id = vi_id;
}

void VirtualRegion::unbind_owner() {
  allocated_ = false;
  regs_ = VrRegisters{};
}

void VirtualRegion::configure(const VrRegisters& regs) {
  if (!allocated_)
    throw StateError("VR " + std::to_string(number()) + " is not allocated");
  if (regs.vi_id == kUnallocatedVi || regs.vi_id > kMaxViId)
    throw StateError("VR " + std::to_string(number()) + ": VI_ID register out of range");
  if (regs.dest_router_id > kMaxRouterId || regs.dest_vr_id > kMaxVrId)
    throw StateError("VR " + std::to_string(number()) + ": destination register out of range");
  regs_ = regs;
}

Flit VirtualRegion::make_flit(const Header& h, const Payload& payload, Cycle cycle,
                              FlowId flow) const {
  if (payload.width() != width_)
    throw ConfigError("payload width " + std::to_string(payload.width()) +
                      " differs from configured data width " + std::to_string(width_));
  Flit f;
  f.header = h;
  f.payload = payload;
  f.inject_cycle = cycle;
  f.flow = flow;
  f.source_vi = regs_.vi_id;
  return f;
}

EnqueueResult VirtualRegion::push(Flit f) {
  ++counters_.injected;
  if (full()) {
    ++counters_.refused;
    return EnqueueResult::Refused;
  }
  queue_.push_back(std::move(f));
  return EnqueueResult::Queued;
}

EnqueueResult VirtualRegion::inject(const Payload& payload, Cycle cycle, FlowId flow) {
  if (!allocated_ || !regs_.dest_valid)
    throw StateError("inject into unconfigured VR " + std::to_string(number()));
  const Header h{regs_.vi_id, regs_.dest_router_id, regs_.dest_vr_id};
  return push(make_flit(h, payload, cycle, flow));
}

EnqueueResult VirtualRegion::inject_direct(VrNumber peer, const Payload& payload, Cycle cycle,
                                           FlowId flow) {
  if (!allocated_) throw StateError("inject into unallocated VR " + std::to_string(number()));
  Flit f = make_flit(destination_header(peer, regs_.vi_id), payload, cycle, flow);
  ++counters_.injected;
  if (full()) {
    ++counters_.refused;
    return EnqueueResult::Refused;
  }
  direct_.push_back({peer, std::move(f)});
  return EnqueueResult::Queued;
}

EnqueueResult VirtualRegion::inject_forged(const Header& h, const Payload& payload, Cycle cycle,
                                           FlowId flow) {
  Flit f = make_flit(h, payload, cycle, flow);
  f.forged = true;
  return push(std::move(f));
}

Flit VirtualRegion::pull(Cycle now) {
  if (empty_flag(now)) throw InvariantError("pull from an EMPTY VR queue");
  Flit f = std::move(queue_.front());
  queue_.pop_front();
  f.pull_cycle = now;
  ++counters_.pulled;
  return f;
}

Flit VirtualRegion::pull_direct(Cycle now) {
  if (direct_empty_flag(now)) throw InvariantError("pull from an EMPTY direct-link queue");
  Flit f = std::move(direct_.front().flit);
  direct_.pop_front();
  f.pull_cycle = now;
  ++counters_.pulled;
  return f;
}

AcceptResult VirtualRegion::accept(const Flit& flit, Cycle now) {
  if (!allocated_ || flit.header.vi_id != regs_.vi_id) {
    ++counters_.denied;
    return AcceptResult::Denied;
  }
  ++counters_.accepted;
  // Header stripped: only the payload reaches the user region.
  for (unsigned w = 0; w < flit.payload.word_count(); ++w) {
    sink_hash_ ^= flit.payload.word(w);
    sink_hash_ *= 0x100000001b3ull;
  }
  if (sink_.size() < sink_limit_) sink_.push_back({flit.payload, now, flit.flow, flit.source_vi});
  return AcceptResult::Delivered;
}

void VirtualRegion::sample_depth() noexcept {
  const auto d = queue_depth();
  ++counters_.depth_samples;
  counters_.depth_sum += d;
  counters_.max_depth = std::max(counters_.max_depth, d);
}

}  // namespace mtnoc

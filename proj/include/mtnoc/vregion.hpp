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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

#include "mtnoc/packet.hpp"
#include "mtnoc/topology.hpp"

namespace mtnoc {

/// VI_ID register value of a VR no tenant owns. Tenant ids are 1..1023.
inline constexpr std::uint16_t kUnallocatedVi = 0;

/// Hypervisor-written wrapper registers.
struct VrRegisters {
  std::uint8_t dest_router_id = 0;
  std::uint8_t dest_vr_id = 0;
  std::uint16_t vi_id = kUnallocatedVi;
  bool dest_valid = false;  // ROUTER_ID/VR_ID hold a destination
};

enum class EnqueueResult : std::uint8_t { Queued, Refused };
enum class AcceptResult : std::uint8_t { Delivered, Denied };

/// What the USER REGION sees of a delivered flit: the payload only. The flow
/// tag and source VI are simulator bookkeeping for isolation checks.
struct SinkEntry {
  Payload payload;
  Cycle cycle = 0;
  FlowId flow = kNoFlow;
  std::uint16_t source_vi = 0;
};

struct VrCounters {
  std::uint64_t injected = 0;  // injection attempts
  std::uint64_t refused = 0;
  std::uint64_t pulled = 0;    // left the queues (router handshake or direct link)
  std::uint64_t accepted = 0;  // access monitor deliveries
  std::uint64_t denied = 0;
  std::uint64_t depth_samples = 0;
  std::uint64_t depth_sum = 0;
  std::size_t max_depth = 0;

  double mean_depth() const noexcept {
    return depth_samples == 0 ? 0.0 : static_cast<double>(depth_sum) / depth_samples;
  }
};

class VirtualRegion {
 public:
  /// `queue_capacity` 0 means unbounded. `sink_log_limit` bounds the retained
  /// delivery log; deliveries beyond it are still counted and hashed.
  VirtualRegion(const VrDescriptor& d, unsigned data_width_bits, std::size_t queue_capacity = 0,
                std::size_t sink_log_limit = 4096);

  VrNumber number() const noexcept { return desc_.number; }
  std::uint8_t router_id() const noexcept { return desc_.router_id; }
  Side side() const noexcept { return desc_.side; }
  unsigned data_width() const noexcept { return width_; }

  bool allocated() const noexcept { return allocated_; }
  const VrRegisters& registers() const noexcept { return regs_; }

  // Hypervisor interface (tenancy module only).
  void bind_owner(std::uint16_t vi_id);
  void unbind_owner();
  void configure(const VrRegisters& regs);

  /// Wrapper egress: header from the registers, payload from the user region.
  EnqueueResult inject(const Payload& payload, Cycle cycle, FlowId flow);
  /// Direct VR-to-VR link egress. The link is point-to-point, so only the
  /// owner VI travels with the payload.
  EnqueueResult inject_direct(VrNumber peer, const Payload& payload, Cycle cycle, FlowId flow);
  /// Test-only path that skips the wrapper and sends an arbitrary header.
  EnqueueResult inject_forged(const Header& h, const Payload& payload, Cycle cycle, FlowId flow);

  /// Registered EMPTY flag: a flit written during cycle t becomes visible to
  /// the router allocator from cycle t+1.
  bool empty_flag(Cycle now) const noexcept {
    return queue_.empty() || queue_.front().inject_cycle >= now;
  }
  bool direct_empty_flag(Cycle now) const noexcept {
    return direct_.empty() || direct_.front().flit.inject_cycle >= now;
  }
  const Flit& head() const { return queue_.front(); }
  VrNumber direct_head_peer() const { return direct_.front().peer; }
  Flit pull(Cycle now);
  Flit pull_direct(Cycle now);

  /// Access monitor ingress.
  AcceptResult accept(const Flit& flit, Cycle now);

  std::size_t queue_depth() const noexcept { return queue_.size() + direct_.size(); }
  void sample_depth() noexcept;

  const VrCounters& counters() const noexcept { return counters_; }
  const std::vector<SinkEntry>& sink() const noexcept { return sink_; }
  std::uint64_t sink_hash() const noexcept { return sink_hash_; }

 private:
  struct DirectEntry {
    VrNumber peer;
    Flit flit;
  };
  bool full() const noexcept { return capacity_ != 0 && queue_depth() >= capacity_; }
  Flit make_flit(const Header& h, const Payload& payload, Cycle cycle, FlowId flow) const;
  EnqueueResult push(Flit f);

  VrDescriptor desc_;
  unsigned width_;
  std::size_t capacity_;
  std::size_t sink_limit_;
  bool allocated_ = false;
  VrRegisters regs_;
  std::deque<Flit> queue_;
  std::deque<DirectEntry> direct_;
  VrCounters counters_;
  std::vector<SinkEntry> sink_;
  std::uint64_t sink_hash_ = 0xcbf29ce484222325ull;
};

}  // namespace mtnoc

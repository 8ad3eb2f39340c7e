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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "mtnoc/packet.hpp"

namespace mtnoc {

/// Router port roles. The numeric value doubles as the port index and as the
/// round-robin order used by every output allocator.
enum class Direction : std::uint8_t { North = 0, South = 1, WestVR = 2, EastVR = 3 };

inline constexpr std::size_t kPorts = 4;
inline constexpr std::array<Direction, kPorts> kAllDirections{
    Direction::North, Direction::South, Direction::WestVR, Direction::EastVR};

constexpr std::size_t index(Direction d) noexcept { return static_cast<std::size_t>(d); }
std::string_view to_string(Direction d) noexcept;

/// Bit set of present ports, indexed by Direction.
class PortMap {
 public:
  constexpr PortMap() = default;
  static constexpr PortMap all() { return PortMap(0b1111); }
  static constexpr PortMap from_mask(std::uint8_t m) { return PortMap(m & 0b1111); }

  constexpr bool has(Direction d) const noexcept { return (mask_ >> index(d)) & 1u; }
  constexpr PortMap with(Direction d) const noexcept {
    return PortMap(static_cast<std::uint8_t>(mask_ | (1u << index(d))));
  }
  constexpr PortMap without(Direction d) const noexcept {
    return PortMap(static_cast<std::uint8_t>(mask_ & ~(1u << index(d))));
  }
  constexpr unsigned size() const noexcept {
    return static_cast<unsigned>(__builtin_popcount(mask_));
  }
  constexpr std::uint8_t mask() const noexcept { return mask_; }
  friend constexpr bool operator==(PortMap, PortMap) = default;

 private:
  constexpr explicit PortMap(std::uint8_t m) : mask_(m) {}
  std::uint8_t mask_ = 0;
};

struct RouterConfig {
  std::uint8_t router_id = 0;
  PortMap ports = PortMap::all();
  unsigned data_width_bits = 32;

  unsigned radix() const noexcept { return ports.size(); }
};

/// One-dimensional header routing. North when the destination router is above
/// this one, South when below, otherwise the VR side selected by vr_id.
constexpr Direction route_decision(unsigned pkt_router_id, unsigned pkt_vr_id,
                                   unsigned self_router_id) noexcept {
  if (pkt_router_id > self_router_id) return Direction::North;
  if (pkt_router_id < self_router_id) return Direction::South;
  return pkt_vr_id == 0 ? Direction::WestVR : Direction::EastVR;
}

/// Routing checked against the router's wiring: nullopt when the chosen
/// output does not exist or would loop back onto the arrival port.
std::optional<Direction> checked_route(const RouterConfig& cfg, const Header& h,
                                       Direction arrival) noexcept;

struct Grant {
  unsigned port;
  unsigned next_pointer;
};

/// Round-robin pick over a request bit mask: the first requester at or after
/// `pointer` in cyclic order over `num_ports`. `requests` must be non-zero.
Grant arbitrate(std::uint8_t requests, unsigned pointer, unsigned num_ports = kPorts);

/// VR side of the allocator handshake: the allocator asserts RD_EN only when
/// the queue reports not-EMPTY and the crossbar channel is ready.
constexpr bool handshake_pull(bool queue_empty, bool allocator_ready) noexcept {
  return !queue_empty && allocator_ready;
}

/// Routing outcome for the flit offered on one input this cycle.
struct InputTarget {
  enum class Kind : std::uint8_t { Idle, Routed, Misroute };
  Kind kind = Kind::Idle;
  Direction out = Direction::North;
};
using InputTargets = std::array<InputTarget, kPorts>;

/// Flit offered on each input this cycle; null when nothing is offered.
using Offers = std::array<const Flit*, kPorts>;
using OutputFlags = std::array<bool, kPorts>;

struct TickResult {
  std::array<std::optional<Flit>, kPorts> emitted;  // indexed by output
  OutputFlags accepted{};                            // indexed by input
  OutputFlags misrouted{};                           // indexed by input
  OutputFlags collision{};                           // output saw >= 2 requesters
};

/// Bufferless router with a two-stage output pipeline per port.
///
/// Stage 1 is the crossbar register loaded by the allocator grant, stage 2 the
/// output register. A flit granted at cycle t occupies stage 1 after t, stage 2
/// after t+1 and is handed downstream during cycle t+2. A flit stays in stage 2
/// until the downstream consumer is ready; stage 1 then backs up and the
/// allocator stops granting, so upstream flits remain where they are.
class Router {
 public:
  explicit Router(const RouterConfig& cfg);

  const RouterConfig& config() const noexcept { return cfg_; }
  std::uint8_t id() const noexcept { return cfg_.router_id; }

  InputTargets targets(const Offers& offers) const noexcept;

  /// Input that would win `out` this cycle, ignoring whether stage 1 frees up.
  std::optional<Direction> winner(Direction out, const InputTargets& targets) const noexcept;

  /// Whether stage 1 of `out` can take a new flit this cycle.
  bool stage1_free(Direction out, bool downstream_ready) const noexcept {
    const auto o = index(out);
    return !stage1_[o] || !stage2_[o] || downstream_ready;
  }

  const std::optional<Flit>& output_register(Direction d) const noexcept {
    return stage2_[index(d)];
  }
  const std::optional<Flit>& crossbar_register(Direction d) const noexcept {
    return stage1_[index(d)];
  }
  unsigned pointer(Direction out) const noexcept { return pointer_[index(out)]; }
  bool stalled(Direction in) const noexcept { return stalled_[index(in)]; }

  /// Flits currently held in the pipeline registers.
  std::size_t in_flight() const noexcept;

  /// One clock edge. Emits stage-2 flits whose output is ready, advances
  /// stage 1 into stage 2, then lets every output allocator grant one input.
  TickResult tick(const Offers& offers, const OutputFlags& downstream_ready);

 private:
  RouterConfig cfg_;
  std::array<std::optional<Flit>, kPorts> stage1_;
  std::array<std::optional<Flit>, kPorts> stage2_;
  std::array<unsigned, kPorts> pointer_{};
  OutputFlags stalled_{};
};

}  // namespace mtnoc

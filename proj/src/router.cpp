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

#include "mtnoc/router.hpp"

#include <stdexcept>

namespace mtnoc {

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::North: return "N";
    case Direction::South: return "S";
    case Direction::WestVR: return "W";
    case Direction::EastVR: return "E";
  }
  return "?";
}

std::optional<Direction> checked_route(const RouterConfig& cfg, const Header& h,
                                       Direction arrival) noexcept {
  const Direction d = route_decision(h.router_id, h.vr_id, cfg.router_id);
  if (!cfg.ports.has(d) || d == arrival) return std::nullopt;
  return d;
}

Grant arbitrate(std::uint8_t requests, unsigned pointer, unsigned num_ports) {
  if (requests == 0) throw std::invalid_argument("arbitrate: empty request set");
  for (unsigned k = 0; k < num_ports; ++k) {
    const unsigned p = (pointer + k) % num_ports;
    if ((requests >> p) & 1u) return Grant{p, (p + 1) % num_ports};
  }
  throw std::invalid_argument("arbitrate: request index beyond port count");
}

Router::Router(const RouterConfig& cfg) : cfg_(cfg) {
  const unsigned r = cfg.radix();
  const bool vr_sides = cfg.ports.has(Direction::WestVR) && cfg.ports.has(Direction::EastVR);
  if (!vr_sides || r < 2)
    throw ConfigError("router " + std::to_string(cfg.router_id) +
                      ": both VR-facing ports are required");
  if (cfg.router_id > kMaxRouterId)
    throw ConfigError("router id " + std::to_string(cfg.router_id) + " exceeds 5 bits");
}

InputTargets Router::targets(const Offers& offers) const noexcept {
  InputTargets t{};
  for (auto in : kAllDirections) {
    const Flit* f = offers[index(in)];
    if (f == nullptr || !cfg_.ports.has(in)) continue;
    if (auto out = checked_route(cfg_, f->header, in)) {
      t[index(in)] = {InputTarget::Kind::Routed, *out};
    } else {
      t[index(in)].kind = InputTarget::Kind::Misroute;
    }
  }
  return t;
}

std::optional<Direction> Router::winner(Direction out, const InputTargets& targets) const noexcept {
  std::uint8_t req = 0;
  for (auto in : kAllDirections) {
    const auto& t = targets[index(in)];
    if (t.kind == InputTarget::Kind::Routed && t.out == out)
      req = static_cast<std::uint8_t>(req | (1u << index(in)));
  }
  if (req == 0) return std::nullopt;
  return static_cast<Direction>(arbitrate(req, pointer_[index(out)]).port);
}

std::size_t Router::in_flight() const noexcept {
  std::size_t n = 0;
  for (std::size_t o = 0; o < kPorts; ++o) n += stage1_[o].has_value() + stage2_[o].has_value();
  return n;
}

TickResult Router::tick(const Offers& offers, const OutputFlags& downstream_ready) {
  TickResult res;
  const InputTargets tgt = targets(offers);

  // Winners are decided on the state at the clock edge.
  std::array<std::optional<Direction>, kPorts> win;
  std::array<bool, kPorts> can_take{};
  for (auto out : kAllDirections) {
    const auto o = index(out);
    if (!cfg_.ports.has(out)) continue;
    win[o] = winner(out, tgt);
    can_take[o] = stage1_free(out, downstream_ready[o]);
    unsigned requesters = 0;
    for (const auto& t : tgt) requesters += (t.kind == InputTarget::Kind::Routed && t.out == out);
    res.collision[o] = requesters >= 2;
  }

  for (auto out : kAllDirections) {
    const auto o = index(out);
    if (stage2_[o] && downstream_ready[o]) {
      res.emitted[o] = std::move(stage2_[o]);
      stage2_[o].reset();
    }
    if (!stage2_[o] && stage1_[o]) {
      stage2_[o] = std::move(stage1_[o]);
      stage1_[o].reset();
    }
  }

  stalled_ = {};
  for (auto in : kAllDirections) {
    const auto i = index(in);
    if (tgt[i].kind == InputTarget::Kind::Misroute) {
      res.accepted[i] = true;
      res.misrouted[i] = true;
    } else if (tgt[i].kind == InputTarget::Kind::Routed) {
      stalled_[i] = true;
    }
  }
  for (auto out : kAllDirections) {
    const auto o = index(out);
    if (!win[o] || !can_take[o]) continue;
    if (stage1_[o]) throw InvariantError("router stage 1 occupied after advance");
    const auto i = index(*win[o]);
    Flit f = *offers[i];
    ++f.routers;
    stage1_[o] = std::move(f);
    pointer_[o] = (i + 1) % kPorts;
    res.accepted[i] = true;
    stalled_[i] = false;
  }
  return res;
}

}  // namespace mtnoc

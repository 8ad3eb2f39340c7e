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
#include <compare>
#include <cstdint>
#include <string>

#include "mtnoc/common.hpp"

namespace mtnoc {

// Header layout, MSB first: VI_ID[15:6] | ROUTER_ID[5:1] | VR_ID[0].
inline constexpr unsigned kViIdBits = 10;
inline constexpr unsigned kRouterIdBits = 5;
inline constexpr unsigned kVrIdBits = 1;
inline constexpr unsigned kHeaderBits = kViIdBits + kRouterIdBits + kVrIdBits;
static_assert(kHeaderBits == 16);

inline constexpr unsigned kViIdShift = kRouterIdBits + kVrIdBits;
inline constexpr unsigned kRouterIdShift = kVrIdBits;

inline constexpr std::uint32_t kMaxViId = (1u << kViIdBits) - 1;
inline constexpr std::uint32_t kMaxRouterId = (1u << kRouterIdBits) - 1;
inline constexpr std::uint32_t kMaxVrId = (1u << kVrIdBits) - 1;

using HeaderWord = std::uint16_t;

struct Header {
  std::uint16_t vi_id = 0;
  std::uint8_t router_id = 0;
  std::uint8_t vr_id = 0;

  friend constexpr auto operator<=>(const Header&, const Header&) = default;
};

/// Raised when a header field does not fit its bit width.
class EncodeError : public Error {
 public:
  EncodeError(std::string field, std::uint32_t value);
  const std::string& field() const noexcept { return field_; }
  std::uint32_t value() const noexcept { return value_; }

 private:
  std::string field_;
  std::uint32_t value_;
};

HeaderWord encode_header(const Header& h);

constexpr Header decode_header(HeaderWord w) noexcept {
  return Header{static_cast<std::uint16_t>(w >> kViIdShift),
                static_cast<std::uint8_t>((w >> kRouterIdShift) & kMaxRouterId),
                static_cast<std::uint8_t>(w & kMaxVrId)};
}

/// "0x%04x" rendering used in traces.
std::string header_hex(HeaderWord w);

/// Opaque payload bit-vector. The simulator never interprets the contents.
class Payload {
 public:
  static constexpr unsigned kMaxBits = 512;

  Payload() = default;
  explicit Payload(unsigned width_bits);

  /// Fills the low 64 bits from `value` (masked to the width).
  static Payload from_u64(unsigned width_bits, std::uint64_t value);

  unsigned width() const noexcept { return width_; }
  bool bit(unsigned i) const;
  void set_bit(unsigned i, bool v);
  std::uint64_t word(unsigned i) const { return words_.at(i); }
  void set_word(unsigned i, std::uint64_t v);
  unsigned word_count() const noexcept { return (width_ + 63) / 64; }

  friend bool operator==(const Payload&, const Payload&) = default;

 private:
  void mask_tail();

  unsigned width_ = 0;
  std::array<std::uint64_t, kMaxBits / 64> words_{};
};

/// One header+payload transfer unit. Everything besides header and payload is
/// simulator bookkeeping and never crosses a VR boundary.
struct Flit {
  Header header;
  Payload payload;
  Cycle inject_cycle = 0;
  Cycle pull_cycle = 0;
  FlowId flow = kNoFlow;
  std::uint16_t source_vi = 0;  // owner of the originating VR at injection
  std::uint8_t routers = 0;     // routers traversed so far
  bool forged = false;          // bypassed the wrapper (adversarial generator)
};

}  // namespace mtnoc

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

#include "mtnoc/packet.hpp"

#include <cstdio>

namespace mtnoc {

EncodeError::EncodeError(std::string field, std::uint32_t value)
    : Error("header field " + field + " out of range: " + std::to_string(value)),
      field_(std::move(field)),
      value_(value) {}

HeaderWord encode_header(const Header& h) {
  if (h.vi_id > kMaxViId) throw EncodeError("vi_id", h.vi_id);
  if (h.router_id > kMaxRouterId) throw EncodeError("router_id", h.router_id);
  if (h.vr_id > kMaxVrId) throw EncodeError("vr_id", h.vr_id);
  return static_cast<HeaderWord>((h.vi_id << kViIdShift) | (h.router_id << kRouterIdShift) |
                                 h.vr_id);
}

std::string header_hex(HeaderWord w) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%04x", static_cast<unsigned>(w));
  return buf;
}

Payload::Payload(unsigned width_bits) : width_(width_bits) {
  if (width_bits == 0 || width_bits > kMaxBits)
    throw ConfigError("payload width must be in 1.." + std::to_string(kMaxBits) +
                      " bits, got " + std::to_string(width_bits));
}

Payload Payload::from_u64(unsigned width_bits, std::uint64_t value) {
  Payload p(width_bits);
  p.words_[0] = value;
  p.mask_tail();
  return p;
}

bool Payload::bit(unsigned i) const {
  if (i >= width_) throw std::out_of_range("payload bit index");
  return (words_[i / 64] >> (i % 64)) & 1u;
}

void Payload::set_bit(unsigned i, bool v) {
  if (i >= width_) throw std::out_of_range("payload bit index");
  const std::uint64_t m = std::uint64_t{1} << (i % 64);
  words_[i / 64] = v ? (words_[i / 64] | m) : (words_[i / 64] & ~m);
}

void Payload::set_word(unsigned i, std::uint64_t v) {
  if (i >= word_count()) throw std::out_of_range("payload word index");
  words_[i] = v;
  mask_tail();
}

void Payload::mask_tail() {
  for (unsigned w = word_count(); w < words_.size(); ++w) words_[w] = 0;
  if (const unsigned rem = width_ % 64; rem != 0 && width_ > 0)
    words_[word_count() - 1] &= (std::uint64_t{1} << rem) - 1;
}

}  // namespace mtnoc

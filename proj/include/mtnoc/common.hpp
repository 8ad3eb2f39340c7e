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
#include <stdexcept>
#include <string>

namespace mtnoc {

using Cycle = std::uint64_t;
using FlowId = std::uint32_t;

/// Global virtual-region number. VR numbers are 1-based; VR k sits on router
/// (k-1)/2, West side when (k-1) is even and East side when odd.
using VrNumber = std::uint32_t;

inline constexpr FlowId kNoFlow = 0xFFFFFFFFu;

/// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad configuration detected before the first simulated cycle.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operation invalid in the current tenancy/VR state.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (conservation, output exclusivity, ...).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// splitmix64 finalizer; used for every seed derivation in the project.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`. Stable across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix_seed(master ^ mix_seed(index + 1));
}

}  // namespace mtnoc

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

#include <filesystem>
#include <string>

#include "mtnoc/engine.hpp"

namespace mtnoc {

inline constexpr int kScenarioSchemaVersion = 1;

/// Scenario text that does not parse or does not match the schema. The
/// message carries a line/column for syntax errors and a JSON pointer for
/// field errors.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

/// Parses a scenario document. `origin` prefixes diagnostics (usually a path).
SimConfig parse_scenario(const std::string& text, const std::string& origin = "<scenario>");
SimConfig load_scenario(const std::filesystem::path& path);

}  // namespace mtnoc

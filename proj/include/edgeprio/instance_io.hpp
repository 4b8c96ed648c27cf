// Copyright (c) edgeprio contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON serialization for instances and strategy profiles. Parsing errors are
// reported as MalformedInput; semantic problems are left to validate_instance.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "edgeprio/core.hpp"

namespace edgeprio {

using Json = nlohmann::ordered_json;

Json instance_to_json(const GameInstance& instance);
GameInstance instance_from_json(const Json& json);

Json profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const Json& json);

/// Parses text as JSON; throws MalformedInput on syntax errors.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// FNV-1a over the compact canonical serialization of the instance.
std::uint64_t instance_hash(const GameInstance& instance);
std::string hash_hex(std::uint64_t hash);

}  // namespace edgeprio

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mmbeam/scenario.hpp"

namespace mmbeam {

// JSON <-> ScenarioConfig. Unknown keys are rejected. bs2_power_offset_db
// accepts the string "-inf" for an absent BS #2.
ScenarioConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& cfg);

// Parses and validates a config file; parse errors carry line:column.
nlohmann::json load_config_json(const std::string& path);

// Applies one "dotted.path=value" override in place. The value is parsed as
// JSON when possible and falls back to a plain string.
void apply_override(nlohmann::json& j, const std::string& key_eq_value);

}  // namespace mmbeam

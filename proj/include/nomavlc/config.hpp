#pragma once

// JSON scenario files. Angles are in degrees, power in watts, noise PSD in
// A^2/Hz, bandwidth in Hz and SINR targets in dB; everything is converted
// to SI/linear/radians once here.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nomavlc/sim.hpp"

namespace nomavlc {

// Default scenario: 3 x 3 m room, two LEDs, K = 2..8, 10000 trials per K.
ScenarioConfig default_config();

// Missing keys keep their defaults. Throws ConfigError listing every bad
// or unknown field.
ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ScenarioConfig& cfg);

// Physical and structural checks. Empty result means valid.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);

}  // namespace nomavlc

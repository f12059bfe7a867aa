#pragma once

#include <string>

#include <json.hpp>

#include "visrdv/geometry/environment.hpp"

namespace visrdv {

// Environments are stored as {"vertices": [[x, y], ...]}.
Environment environment_from_json(const nlohmann::json& doc);
nlohmann::json environment_to_json(const Environment& env);

Environment load_environment(const std::string& path);
void save_environment(const Environment& env, const std::string& path);

nlohmann::json read_json_file(const std::string& path);

}  // namespace visrdv

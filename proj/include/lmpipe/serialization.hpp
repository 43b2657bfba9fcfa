#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lmpipe/module.hpp"

namespace lmpipe {

nlohmann::json example_to_json(const Example& example);
Example example_from_json(const nlohmann::json& j);

nlohmann::json generation_config_to_json(const GenerationConfig& config);
GenerationConfig generation_config_from_json(const nlohmann::json& j);

// The compiled-program artifact: every predictor's demonstrations and config,
// keyed by predictor path.
nlohmann::json program_state_to_json(const Module& program, const std::string& program_name);

// Installs an artifact into a structurally matching program. Mismatched
// predictor paths raise StructureError listing both sides.
void install_program_state(Module& program, const nlohmann::json& artifact);

void save_program(const Module& program, const std::string& program_name,
                  const std::filesystem::path& path);
nlohmann::json load_artifact(const std::filesystem::path& path);

// Stable digest of a program's predictor states; equal fingerprints mean
// equal structure, demonstrations, and config.
std::string state_fingerprint(const Module& program);

} // namespace lmpipe

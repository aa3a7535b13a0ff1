#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace fracheat::cli {

/// Executes a resolved experiment config:
///   { "command": ..., "parameters": {...}, "output_path": ..., "seed": ... }
/// Writes the command's artifacts plus <output_path>.manifest.json and
/// returns the list of files written. Throws ValidationError/NumericalError
/// on bad configs or numerical failure.
std::vector<std::string> run_config(const nlohmann::json& config);

/// Exit code mapping used by the binary: 0 ok, 2 validation, 3 numerical.
int run_config_for_exit_code(const nlohmann::json& config, std::string* error_message);

} // namespace fracheat::cli

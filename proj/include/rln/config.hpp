#pragma once

#include <string>
#include <vector>

#include "rln/experiment.hpp"

namespace rln {

// Named parse/validation failure; the message carries file:line or flag
// context.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat `key = value` text. Blank lines and '#' comments are ignored. Every
// key is optional and defaults to the stock parameter set; unknown keys are
// rejected.
SimulationSetup parse_config_file(const std::string& path);

// Applies one key=value pair on top of an existing setup (shared by the
// file parser and CLI flag overrides). `context` prefixes error messages.
void apply_setting(SimulationSetup& setup, const std::string& key, const std::string& value,
                   const std::string& context);

// All keys rendered in canonical order, suitable for re-parsing.
std::string render_config(const SimulationSetup& setup);

// Config plus identification comments; parseable as a config file, so a run
// can be reproduced with --config <manifest>. The timestamp lives in a
// comment and never influences outputs.
std::string render_manifest(const SimulationSetup& setup, const std::string& command_line,
                            const std::vector<std::string>& output_paths);

}  // namespace rln

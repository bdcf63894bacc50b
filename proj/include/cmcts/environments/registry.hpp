#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmcts/environment.hpp"
#include "cmcts/search_config.hpp"

namespace cmcts::envs {

struct UnknownPreset : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Names of the built-in scenario presets addressable from the CLI and plan
// files.
std::vector<std::string> preset_names();

bool is_preset(const std::string& name);

// Builds the named preset. Throws UnknownPreset for anything not listed by
// preset_names().
std::unique_ptr<Environment> make_environment(const std::string& name);

// Per-preset default search constants (budget and seed are still set by the
// caller).
SearchConfig preset_search_config(const std::string& name);

}  // namespace cmcts::envs

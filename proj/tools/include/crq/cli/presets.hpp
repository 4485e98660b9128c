#pragma once

#include "crq/config.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace crq::cli {

/// Baseline bindings used when neither preset nor config sets a key.
KeyValueConfig default_config();

/// Named sweep presets (`region-by-pq`, `pu-delay-vs-load`, ...). Throws ConfigError for
/// unknown names.
KeyValueConfig preset(std::string_view name);

std::vector<std::string> preset_names();

/// Subcommand a preset is meant for, e.g. "region" for region-by-pq.
std::string preset_command(std::string_view name);

}  // namespace crq::cli

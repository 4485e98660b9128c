#pragma once

// Subcommands. Each takes the fully layered configuration and writes its
// output (CSV, or a key = value report) to `out`. The return value is the
// process exit status: 0 success, 1 validation failure. Configuration
// problems throw ConfigError, which the front end maps to status 2.

#include "crq/config.hpp"

#include <ostream>

namespace crq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitConfigError = 2;

int cmd_region(const KeyValueConfig& cfg, std::ostream& out);
int cmd_delay(const KeyValueConfig& cfg, std::ostream& out);
int cmd_simulate(const KeyValueConfig& cfg, std::ostream& out);
int cmd_validate(const KeyValueConfig& cfg, std::ostream& out);
int cmd_optimize(const KeyValueConfig& cfg, std::ostream& out);
int cmd_oracle(const KeyValueConfig& cfg, std::ostream& out);
int cmd_tradeoff(const KeyValueConfig& cfg, std::ostream& out);

/// Throws ConfigError naming the first key no subcommand understands.
void check_known_keys(const KeyValueConfig& cfg);

}  // namespace crq::cli

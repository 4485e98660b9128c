#pragma once

#include <ostream>

namespace crq::cli {

/// Environment variable that overrides the config seed (flags still win).
inline constexpr const char* kSeedEnv = "CRQ_SEED";

/// Full command-line front end. Output goes to `out` unless --out is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crq::cli

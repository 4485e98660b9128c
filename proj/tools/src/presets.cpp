#include "crq/cli/presets.hpp"

#include "crq/errors.hpp"

#include <map>

namespace crq::cli {
namespace {

struct PresetDef {
  const char* command;
  const char* text;
};

// Channel f_pd = 0.3, f_ps = 0.4, f_sd = 0.8 unless a preset overrides it.
const std::map<std::string, PresetDef, std::less<>>& presets() {
  static const std::map<std::string, PresetDef, std::less<>> table{
      {"region-by-pq", {"region", R"(# stable throughput region at p_a = 1 for several p_q
p_a = 1
p_q = 0.1, 0.3, 0.5, 0.7, 0.9
sweep_steps = 41
)"}},
      {"region-by-pa", {"region", R"(# region at the phase-transition p_q for several p_a
p_q = 0.625
p_a = 0, 0.25, 0.5, 0.75, 1
sweep_steps = 41
)"}},
      {"max-lambda-p-vs-pa", {"region", R"(# max lambda_p versus p_a
sweep = p_a
sweep_start = 0
sweep_stop = 1
sweep_steps = 21
p_q = 0.3, 0.5, 0.625, 0.8
lambda_p = 0.2
)"}},
      {"max-lambda-s-vs-pa", {"region", R"(# max lambda_s versus p_a at lambda_p = 0.2
sweep = p_a
sweep_start = 0
sweep_stop = 1
sweep_steps = 21
p_q = 0.3, 0.5, 0.625, 0.8
lambda_p = 0.2
)"}},
      {"pu-delay-vs-load", {"delay", R"(# PU delay versus lambda = lambda_p = lambda_s at p_a = 1
sweep = lambda
sweep_start = 0.01
sweep_stop = 0.3
sweep_steps = 30
p_q = 0.3, 0.5, 0.8
p_a = 1
)"}},
      {"su-delay-vs-load", {"delay", R"(# SU delay versus lambda = lambda_p = lambda_s at p_a = 1
sweep = lambda
sweep_start = 0.01
sweep_stop = 0.3
sweep_steps = 30
p_q = 0.3, 0.5, 0.8
p_a = 1
)"}},
      {"pu-delay-vs-pa", {"delay", R"(# PU delay versus p_a at lambda_p = lambda_s = 0.1
sweep = p_a
sweep_start = 0
sweep_stop = 1
sweep_steps = 21
p_q = 0.3, 0.625, 0.8
lambda_p = 0.1
lambda_s = 0.1
)"}},
      {"su-delay-vs-pa", {"delay", R"(# SU delay versus p_a at lambda_p = lambda_s = 0.1
sweep = p_a
sweep_start = 0
sweep_stop = 1
sweep_steps = 21
p_q = 0.3, 0.625, 0.8
lambda_p = 0.1
lambda_s = 0.1
)"}},
      {"delay-tradeoff", {"tradeoff", R"(# PU-SU delay tradeoff along p_a
sweep = p_a
sweep_start = 0
sweep_stop = 1
sweep_steps = 21
p_q = 0.625, 0.7, 0.8, 0.9
lambda_p = 0.1
lambda_s = 0.1
)"}},
      {"optimal-pu-delay", {"optimize", R"(# optimal PU delay versus lambda_p at lambda_s = 0.2
sweep = lambda_p
sweep_start = 0.01
sweep_stop = 0.6
sweep_steps = 60
lambda_s = 0.2
f_pd = 0.3, 0.4, 0.6
)"}},
      {"optimal-su-delay", {"optimize", R"(# optimal SU delay versus lambda_s at lambda_p = 0.2
sweep = lambda_s
sweep_start = 0.01
sweep_stop = 0.6
sweep_steps = 60
lambda_p = 0.2
)"}},
  };
  return table;
}

}  // namespace

KeyValueConfig default_config() {
  return KeyValueConfig::parse(R"(f_pd = 0.3
f_sd = 0.8
f_ps = 0.4
p_q = 0.5
p_a = 1
lambda_p = 0.1
lambda_s = 0.1
)");
}

KeyValueConfig preset(std::string_view name) {
  auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown preset `" + std::string(name) + "`");
  return KeyValueConfig::parse(it->second.text);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets()) out.push_back(k);
  return out;
}

std::string preset_command(std::string_view name) {
  auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown preset `" + std::string(name) + "`");
  return it->second.command;
}

}  // namespace crq::cli

#include "crq/cli/app.hpp"

#include "crq/cli/commands.hpp"
#include "crq/cli/presets.hpp"
#include "crq/config.hpp"
#include "crq/errors.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crq::cli {
namespace {

using Command = int (*)(const KeyValueConfig&, std::ostream&);

const std::map<std::string, std::pair<Command, std::string>>& commands() {
  static const std::map<std::string, std::pair<Command, std::string>> table{
      {"region", {cmd_region, "Stability-region boundaries per policy plus the union boundary"}},
      {"delay", {cmd_delay, "Closed-form queue lengths and delays over a sweep"}},
      {"simulate", {cmd_simulate, "Slot-level simulation over a sweep"}},
      {"validate", {cmd_validate, "Simulation against closed forms; exit 1 on a tolerance miss"}},
      {"optimize", {cmd_optimize, "Delay-optimal access and admission probabilities"}},
      {"oracle", {cmd_oracle, "Truncated-chain stationary solve against closed forms"}},
      {"tradeoff", {cmd_tradeoff, "Primary/secondary delay pairs along p_a"}},
  };
  return table;
}

struct Flags {
  std::string config_path;
  std::string out_path;
  std::string preset_name;
  std::optional<std::uint64_t> seed, slots, warmup, replications, threads;
  std::vector<std::string> sets;
};

KeyValueConfig layered_config(const Flags& f, std::ostream& err, const std::string& command) {
  KeyValueConfig cfg = default_config();
  if (!f.preset_name.empty()) {
    cfg.merge(preset(f.preset_name));
    if (preset_command(f.preset_name) != command) {
      err << "note: preset " << f.preset_name << " is meant for `" << preset_command(f.preset_name) << "`\n";
    }
  }
  if (!f.config_path.empty()) cfg.merge(KeyValueConfig::load(f.config_path));
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    KeyValueConfig e;
    e.set("seed", std::string(env));
    if (!e.get_u64("seed")) throw ConfigError(std::string(kSeedEnv) + " is not an unsigned integer", 0);
    cfg.merge(e);
  }
  for (const auto& s : f.sets) {
    if (s.find('=') == std::string::npos) throw ConfigError("--set expects key=value, got `" + s + "`", 0);
    // Reuse the file grammar, but drop its line numbers: they would point
    // into a one-line pseudo file.
    KeyValueConfig one;
    try {
      one = KeyValueConfig::parse(s);
    } catch (const ConfigError& e) {
      throw ConfigError("--set " + s + ": " + e.what(), 0);
    }
    for (const auto& key : one.keys()) cfg.set(key, *one.get_string(key));
  }
  auto set_u64 = [&](const char* key, const std::optional<std::uint64_t>& v) {
    if (v) cfg.set(key, std::to_string(*v));
  };
  set_u64("seed", f.seed);
  set_u64("slots", f.slots);
  set_u64("warmup", f.warmup);
  set_u64("replications", f.replications);
  set_u64("threads", f.threads);
  check_known_keys(cfg);
  return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cooperative cognitive-radio queueing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--config", f.config_path, "key = value config file")->check(CLI::ExistingFile);
  app.add_option("--out", f.out_path, "Output path (default stdout)");
  app.add_option("--preset", f.preset_name, "Named sweep preset, e.g. region-by-pq");
  app.add_option("--seed", f.seed, "Base RNG seed");
  app.add_option("--slots", f.slots, "Simulated slots per run (default 1000000)");
  app.add_option("--warmup", f.warmup, "Warm-up slots excluded from statistics (default 10000)");
  app.add_option("--replications", f.replications, "Independent replications per point (default 1)");
  app.add_option("--threads", f.threads, "Worker threads for sweep points (0 = all cores)");
  app.add_option("--set", f.sets, "Override one key, e.g. --set p_q=0.3,0.5")->take_all();

  std::string chosen;
  for (const auto& [name, entry] : commands()) {
    app.add_subcommand(name, entry.second)->callback([&chosen, n = name] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    const KeyValueConfig cfg = layered_config(f, err, chosen);
    const Command cmd = commands().at(chosen).first;
    if (f.out_path.empty()) return cmd(cfg, out);
    std::ofstream file(f.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << f.out_path << " for writing\n";
      return kExitConfigError;
    }
    const int code = cmd(cfg, file);
    file.flush();
    if (!file) {
      err << "error: write to " << f.out_path << " failed\n";
      return kExitValidationFailure;
    }
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidationFailure;
  }
}

}  // namespace crq::cli

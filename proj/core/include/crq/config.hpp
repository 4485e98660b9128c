#pragma once

#include "crq/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crq {

/// Flat `key = value` configuration text. One entry per line, `#` starts a
/// comment, blank lines are ignored, keys are case-sensitive and unique.
/// Values may be comma-separated lists where a caller asks for one.
class KeyValueConfig {
public:
  KeyValueConfig() = default;

  /// Throws ConfigError carrying the 1-based line number of the first bad line.
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return entries_.contains(key); }
  void set(const std::string& key, std::string value);
  void set(const std::string& key, double value);
  void erase(const std::string& key) { entries_.erase(key); }

  /// Later entries win. Line numbers of `other` are kept for its keys.
  void merge(const KeyValueConfig& other);

  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::uint64_t> get_u64(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;

  double require_double(const std::string& key) const;

  /// Line the key was read from, 0 for keys set programmatically.
  int line_of(const std::string& key) const;

  std::vector<std::string> keys() const;

  /// Canonical text: keys sorted, doubles in shortest round-trip form.
  std::string to_text() const;

private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries_;
};

/// Shortest decimal text that parses back to exactly `v`.
std::string format_exact(double v);

/// Locale-independent strict parse of a whole token; nullopt on junk.
std::optional<double> parse_double(std::string_view token);

void write_channel(KeyValueConfig& cfg, const ChannelProfile& ch);
void write_policy(KeyValueConfig& cfg, const Policy& pol);
void write_point(KeyValueConfig& cfg, const OperatingPoint& pt);

/// Reads f_pd / f_sd / f_ps; validation failures surface as ConfigError.
ChannelProfile read_channel(const KeyValueConfig& cfg);
Policy read_policy(const KeyValueConfig& cfg);
OperatingPoint read_point(const KeyValueConfig& cfg);

}  // namespace crq

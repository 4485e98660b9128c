#include "crq/config.hpp"

#include "crq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace crq {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

}  // namespace

std::string format_exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || token.empty()) {
    return std::nullopt;
  }
  return v;
}

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
  KeyValueConfig cfg;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected `key = value`", line_no);
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (!valid_key(key)) {
      throw ConfigError("invalid key `" + std::string(key) + "`", line_no);
    }
    if (value.empty()) {
      throw ConfigError("missing value for `" + std::string(key) + "`", line_no);
    }
    std::string k(key);
    if (cfg.entries_.contains(k)) {
      throw ConfigError("duplicate key `" + k + "`", line_no);
    }
    cfg.entries_[k] = Entry{std::string(value), line_no};
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void KeyValueConfig::set(const std::string& key, std::string value) {
  entries_[key] = Entry{std::move(value), 0};
}

void KeyValueConfig::set(const std::string& key, double value) { set(key, format_exact(value)); }

void KeyValueConfig::merge(const KeyValueConfig& other) {
  for (const auto& [k, e] : other.entries_) entries_[k] = e;
}

std::optional<std::string> KeyValueConfig::get_string(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  auto v = parse_double(it->second.value);
  if (!v) {
    throw ConfigError("`" + key + "` is not a number: `" + it->second.value + "`", it->second.line);
  }
  return v;
}

std::optional<std::uint64_t> KeyValueConfig::get_u64(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  std::string_view s = trim(it->second.value);
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("`" + key + "` is not a non-negative integer: `" + it->second.value + "`",
                      it->second.line);
  }
  return v;
}

std::vector<double> KeyValueConfig::get_list(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  std::vector<double> out;
  std::string_view rest = it->second.value;
  while (true) {
    auto comma = rest.find(',');
    auto tok = rest.substr(0, comma);
    auto v = parse_double(tok);
    if (!v) {
      throw ConfigError("`" + key + "` has a non-numeric list entry `" + std::string(trim(tok)) + "`",
                        it->second.line);
    }
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

double KeyValueConfig::require_double(const std::string& key) const {
  auto v = get_double(key);
  if (!v) throw ConfigError("missing required key `" + key + "`");
  return *v;
}

int KeyValueConfig::line_of(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

std::vector<std::string> KeyValueConfig::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, e] : entries_) out.push_back(k);
  return out;
}

std::string KeyValueConfig::to_text() const {
  std::string out;
  for (const auto& [k, e] : entries_) {
    out += k;
    out += " = ";
    out += e.value;
    out += '\n';
  }
  return out;
}

void write_channel(KeyValueConfig& cfg, const ChannelProfile& ch) {
  cfg.set("f_pd", ch.f_pd());
  cfg.set("f_sd", ch.f_sd());
  cfg.set("f_ps", ch.f_ps());
}

void write_policy(KeyValueConfig& cfg, const Policy& pol) {
  cfg.set("p_q", pol.p_q());
  cfg.set("p_a", pol.p_a());
}

void write_point(KeyValueConfig& cfg, const OperatingPoint& pt) {
  cfg.set("lambda_p", pt.lambda_p());
  cfg.set("lambda_s", pt.lambda_s());
}

namespace {

template <typename F>
auto rethrow_as_config(const KeyValueConfig& cfg, const char* key, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), cfg.line_of(key));
  }
}

}  // namespace

ChannelProfile read_channel(const KeyValueConfig& cfg) {
  double f_pd = cfg.require_double("f_pd");
  double f_sd = cfg.require_double("f_sd");
  double f_ps = cfg.require_double("f_ps");
  return rethrow_as_config(cfg, "f_pd", [&] { return ChannelProfile::make(f_pd, f_sd, f_ps); });
}

Policy read_policy(const KeyValueConfig& cfg) {
  double p_q = cfg.require_double("p_q");
  double p_a = cfg.require_double("p_a");
  return rethrow_as_config(cfg, "p_q", [&] { return Policy::make(p_q, p_a); });
}

OperatingPoint read_point(const KeyValueConfig& cfg) {
  double lp = cfg.require_double("lambda_p");
  double ls = cfg.require_double("lambda_s");
  return rethrow_as_config(cfg, "lambda_p", [&] { return OperatingPoint::make(lp, ls); });
}

}  // namespace crq

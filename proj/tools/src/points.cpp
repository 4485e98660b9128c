#include "crq/cli/points.hpp"

#include "crq/csv.hpp"
#include "crq/errors.hpp"

#include <string>

namespace crq::cli {

std::vector<double> SweepSpec::values() const {
  std::vector<double> out(steps);
  const double step = (stop - start) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = start + step * static_cast<double>(i);
  out.back() = stop;
  return out;
}

std::optional<SweepSpec> read_sweep(const KeyValueConfig& cfg, const std::set<std::string>& allowed) {
  auto var = cfg.get_string("sweep");
  if (!var) return std::nullopt;
  if (!allowed.contains(*var)) {
    std::string names;
    for (const auto& a : allowed) names += (names.empty() ? "" : ", ") + a;
    throw ConfigError("sweep variable `" + *var + "` not supported here (allowed: " + names + ")",
                      cfg.line_of("sweep"));
  }
  SweepSpec s;
  s.variable = *var;
  // Policy probabilities default to their whole domain.
  const bool unit = s.variable == "p_q" || s.variable == "p_a";
  const auto start = cfg.get_double("sweep_start");
  const auto stop = cfg.get_double("sweep_stop");
  s.start = start ? *start : unit ? 0.0 : cfg.require_double("sweep_start");
  s.stop = stop ? *stop : unit ? 1.0 : cfg.require_double("sweep_stop");
  auto steps = cfg.get_u64("sweep_steps");
  s.steps = steps ? static_cast<std::size_t>(*steps) : 21;
  if (s.steps < 2) throw ConfigError("sweep_steps must be >= 2", cfg.line_of("sweep_steps"));
  if (!(s.start < s.stop)) throw ConfigError("sweep_start must be < sweep_stop", cfg.line_of("sweep_start"));
  return s;
}

std::vector<Point> expand_points(const KeyValueConfig& cfg, const std::optional<SweepSpec>& sweep) {
  const auto& keys = parameter_keys();
  std::vector<std::vector<double>> lists;
  for (const auto& k : keys) {
    const bool swept = sweep && (sweep->variable == k ||
                                 (sweep->variable == "lambda" && (k == "lambda_p" || k == "lambda_s")));
    if (swept) {
      lists.push_back({0.0});
      continue;
    }
    auto l = cfg.get_list(k);
    if (l.empty()) throw ConfigError("missing required key `" + k + "`");
    lists.push_back(std::move(l));
  }

  const std::vector<double> sweep_values = sweep ? sweep->values() : std::vector<double>{0.0};
  std::size_t combos = 1;
  for (const auto& l : lists) combos *= l.size();

  std::vector<Point> out;
  out.reserve(combos * sweep_values.size());
  for (std::size_t series = 0; series < combos; ++series) {
    // Mixed-radix decode, last key varying fastest.
    double v[7];
    std::size_t rest = series;
    for (std::size_t k = keys.size(); k-- > 0;) {
      v[k] = lists[k][rest % lists[k].size()];
      rest /= lists[k].size();
    }
    for (double sv : sweep_values) {
      if (sweep) {
        for (std::size_t k = 0; k < keys.size(); ++k) {
          const bool hit = keys[k] == sweep->variable ||
                           (sweep->variable == "lambda" && (keys[k] == "lambda_p" || keys[k] == "lambda_s"));
          if (hit) v[k] = sv;
        }
      }
      Point p{v[0], v[1], v[2], v[3], v[4], v[5], v[6], series};
      try {
        (void)p.channel();
        (void)p.policy();
        (void)p.operating_point();
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid point: ") + e.what());
      }
      out.push_back(p);
    }
  }
  return out;
}

std::vector<std::string> point_header() {
  return {"point", "f_pd", "f_sd", "f_ps", "p_q", "p_a", "lambda_p", "lambda_s"};
}

std::vector<std::string> point_fields(std::size_t index, const Point& p) {
  return {std::to_string(index), csv::number(p.f_pd), csv::number(p.f_sd), csv::number(p.f_ps),
          csv::number(p.p_q),    csv::number(p.p_a),  csv::number(p.lambda_p), csv::number(p.lambda_s)};
}

}  // namespace crq::cli

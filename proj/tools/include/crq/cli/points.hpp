#pragma once

#include "crq/config.hpp"
#include "crq/model.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace crq::cli {

/// Every scalar parameter of one evaluation point.
struct Point {
  double f_pd = 0.0;
  double f_sd = 0.0;
  double f_ps = 0.0;
  double p_q = 0.0;
  double p_a = 0.0;
  double lambda_p = 0.0;
  double lambda_s = 0.0;
  std::size_t series = 0;  ///< index of the list-binding combination

  ChannelProfile channel() const { return ChannelProfile::make(f_pd, f_sd, f_ps); }
  Policy policy() const { return Policy::make(p_q, p_a); }
  OperatingPoint operating_point() const { return OperatingPoint::make(lambda_p, lambda_s); }
};

/// Sweep over one parameter; `lambda` drives lambda_p and lambda_s together.
struct SweepSpec {
  std::string variable;
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;

  std::vector<double> values() const;
};

inline const std::vector<std::string>& parameter_keys() {
  static const std::vector<std::string> keys{"f_pd", "f_sd", "f_ps", "p_q", "p_a", "lambda_p", "lambda_s"};
  return keys;
}

/// Reads `sweep`, `sweep_start`, `sweep_stop`, `sweep_steps`. Returns nullopt
/// when `sweep` is absent. Throws ConfigError for variables outside `allowed`,
/// steps < 2, or start >= stop.
std::optional<SweepSpec> read_sweep(const KeyValueConfig& cfg, const std::set<std::string>& allowed);

/// Cartesian product of comma-list parameter bindings (outer, in key order
/// f_pd, f_sd, f_ps, p_q, p_a, lambda_p, lambda_s) with the sweep values
/// (inner). Every point is validated; failures become ConfigError.
std::vector<Point> expand_points(const KeyValueConfig& cfg, const std::optional<SweepSpec>& sweep);

/// Parameter columns shared by the per-point CSV schemas.
std::vector<std::string> point_header();
std::vector<std::string> point_fields(std::size_t index, const Point& p);

}  // namespace crq::cli

#pragma once

// Delay-optimal (p_q, p_a) at a fixed operating point, subject to the
// stability constraints with 0 < p_q < 1 and 0 <= p_a <= 1.

#include "crq/model.hpp"

#include <optional>
#include <string_view>

namespace crq::optimizer {

/// Optima sit this far inside the open feasible interval: the infimum itself
/// is critically stable and has unbounded delay.
inline constexpr double kInteriorOffset = 1e-6;
/// Results whose smallest stability margin is below this are flagged.
inline constexpr double kNearBoundaryMargin = 1e-3;

/// Smallest p_q keeping Q_s stable at admission probability p_a.
/// Throws InfeasibleError when lambda_p >= mu_p(p_a).
double pq_lower_bound(const ChannelProfile& ch, const OperatingPoint& pt, double p_a);

/// Largest p_q keeping Q_sp stable at admission probability p_a.
double pq_upper_bound(const ChannelProfile& ch, const OperatingPoint& pt, double p_a);

enum class DecisionMode { cooperate, no_cooperation, infeasible };

std::string_view to_string(DecisionMode mode);

struct PrimaryDelayDecision {
  DecisionMode mode = DecisionMode::infeasible;
  std::optional<double> p_q_star;  ///< present iff cooperate
  std::optional<double> p_a_star;  ///< present iff cooperate
  std::optional<double> d_p_star;  ///< absent iff infeasible
  bool near_boundary = false;
  // Intermediate quantities at p_a = 1 (absent when lambda_p >= mu_p(1)).
  std::optional<double> pq_lower;
  std::optional<double> pq_upper;
  double threshold = 0.0;  ///< 1 - f_pd / f_sd
};

/// Threshold rule: with p_min the lower p_q bound at p_a = 1, cooperate at
/// (p_min + offset, 1) when p_min <= 1 - f_pd / f_sd, else fall back to no
/// cooperation (p_a = 0, SU always serves Q_s) when that system is stable.
/// Throws UndefinedRateError when lambda_p = 0.
PrimaryDelayDecision minimize_primary_delay(const ChannelProfile& ch, const OperatingPoint& pt);

struct SecondaryDelayDecision {
  double p_q_star = 0.0;
  double p_a_star = 1.0;
  double d_s_star = 0.0;
  bool near_boundary = false;
  double pq_lower = 0.0;
  double pq_upper = 0.0;
};

/// SU-side optimum with p_a fixed to 1: D_s decreases in p_q, so the optimum
/// is the feasible supremum minus the interior offset. Throws
/// UndefinedRateError when lambda_s = 0 and InfeasibleError when no p_q is
/// stable at p_a = 1.
SecondaryDelayDecision minimize_secondary_delay(const ChannelProfile& ch, const OperatingPoint& pt);

/// Mean PU delay without cooperation: a single queue served at rate f_pd.
double no_cooperation_delay(const ChannelProfile& ch, double lambda_p);

}  // namespace crq::optimizer

#pragma once

// Closed-form stability and delay results for the two-user cooperative
// system: a PU with queue Q_p, and an SU holding its own queue Q_s plus a
// relay queue Q_sp of overheard PU packets.
//
// Every rational form is transcribed term by term; the truncated-chain
// oracle, not algebraic simplification, is what checks them. Functions that
// need a stable operating point throw UnstableError outside their queue's
// stability region instead of returning a meaningless value.

#include "crq/model.hpp"

#include <optional>

namespace crq::analytics {

/// Service rate of Q_p: a head-of-line packet leaves when the destination
/// decodes it or the SU decodes and admits it.
double service_rate_primary(const ChannelProfile& ch, double p_a);

/// Rate at which Q_p packets are admitted to the relay queue while Q_p is busy.
double relay_admission_rate(const ChannelProfile& ch, double p_a);

/// Probability that a packet leaving Q_p goes to the relay queue.
/// Throws UndefinedRateError when the service rate is zero.
double relay_fraction_epsilon(const ChannelProfile& ch, double p_a);

/// Largest PU arrival rate keeping Q_sp stable (tighter than lambda_p < mu_p).
/// Throws DegeneratePolicyError for p_q = 1 with no relay inflow.
double max_arrival_primary(const ChannelProfile& ch, const Policy& pol);

/// Largest SU arrival rate keeping Q_s stable at PU load lambda_p.
/// Throws UnstableError when lambda_p >= mu_p.
double max_arrival_secondary(const ChannelProfile& ch, const Policy& pol, double lambda_p);

/// Strict-inequality stability test. Degenerate policies and lambda_p >= mu_p
/// yield an unstable verdict with the lowest finite double as sentinel margin.
StabilityVerdict is_stable(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

/// p_q at which max_arrival_primary does not depend on p_a: 1 - f_pd / f_sd.
double phase_transition_pq(const ChannelProfile& ch);

/// Outer boundary of the union of all fixed-policy stability regions,
/// floored at zero.
double union_region_max_lambda_s(const ChannelProfile& ch, double lambda_p);

/// Mean length of Q_p (Bernoulli arrivals, geometric service).
double mean_queue_primary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

struct RelayCoefficients {
  double m = 0.0;
  double n = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

RelayCoefficients relay_coefficients(const ChannelProfile& ch, const Policy& pol);

/// N_sp = (m l^2 + n l) / (alpha l^2 + beta l + gamma) with l = lambda_p.
/// Requires Q_p and Q_sp stable; p_a = 0 gives 0 without a relay check.
double mean_queue_relay(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

struct SecondaryCoefficients {
  double a_coef = 0.0;
  double b_coef = 0.0;
  double c_coef = 0.0;
};

SecondaryCoefficients secondary_coefficients(const ChannelProfile& ch, const Policy& pol,
                                             const OperatingPoint& pt);

/// Mean length of Q_s. Requires Q_p and Q_s stable. Throws DomainError when
/// B <= 0 or C == 0.
double mean_queue_secondary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

/// (N_p + N_sp) / lambda_p. Throws UndefinedRateError at lambda_p = 0.
double delay_primary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

/// N_s / lambda_s. Throws UndefinedRateError at lambda_s = 0.
double delay_secondary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

/// Stationary probability that Q_p and Q_s are both empty.
double empty_joint_probability(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

/// Stationary probability that Q_p is empty: 1 - lambda_p / mu_p.
double prob_primary_empty(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

/// Mean delay of a single discrete-time queue with Bernoulli(lambda) arrivals
/// and geometric(mu) service, counted from arrival slot to delivery slot.
/// Throws UndefinedRateError at lambda = 0 and UnstableError when lambda >= mu.
double single_queue_delay(double lambda, double mu);

struct DelayReport {
  double n_p = 0.0;
  double n_sp = 0.0;
  double n_s = 0.0;
  std::optional<double> d_p;  ///< empty when lambda_p = 0
  std::optional<double> d_s;  ///< empty when lambda_s = 0
  double g00 = 0.0;
  double epsilon = 0.0;
};

/// All delay-side quantities at one point. Throws UnstableError unless
/// is_stable holds.
DelayReport evaluate(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt);

}  // namespace crq::analytics

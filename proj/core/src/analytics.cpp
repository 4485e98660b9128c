#include "crq/analytics.hpp"

#include "crq/errors.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <sstream>
#include <stdexcept>

namespace crq::analytics {
namespace {

constexpr double kSentinel = std::numeric_limits<double>::lowest();

// Q_p is stable iff lambda_p < mu_p.
void require_primary_stable(const ChannelProfile& ch, double p_a, double lambda_p) {
  double mu = service_rate_primary(ch, p_a);
  if (!(lambda_p < mu)) {
    std::ostringstream msg;
    msg << "primary queue unstable: lambda_p=" << lambda_p << " >= mu_p=" << mu;
    throw UnstableError(msg.str());
  }
}

void require_relay_stable(const ChannelProfile& ch, const Policy& pol, double lambda_p) {
  require_primary_stable(ch, pol.p_a(), lambda_p);
  if (relay_admission_rate(ch, pol.p_a()) == 0.0) return;  // Q_sp never fills
  double bound = max_arrival_primary(ch, pol);
  if (!(lambda_p < bound)) {
    std::ostringstream msg;
    msg << "relay queue unstable: lambda_p=" << lambda_p << " >= " << bound;
    throw UnstableError(msg.str());
  }
}

void require_secondary_stable(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  double bound = max_arrival_secondary(ch, pol, pt.lambda_p());
  if (!(pt.lambda_s() < bound)) {
    std::ostringstream msg;
    msg << "secondary queue unstable: lambda_s=" << pt.lambda_s() << " >= " << bound;
    throw UnstableError(msg.str());
  }
}

}  // namespace

double service_rate_primary(const ChannelProfile& ch, double p_a) {
  return ch.f_pd() + p_a * ch.f_ps() * (1.0 - ch.f_pd());
}

double relay_admission_rate(const ChannelProfile& ch, double p_a) {
  return p_a * ch.f_ps() * (1.0 - ch.f_pd());
}

double relay_fraction_epsilon(const ChannelProfile& ch, double p_a) {
  double mu = service_rate_primary(ch, p_a);
  if (mu == 0.0) throw UndefinedRateError("relay fraction undefined: mu_p = 0");
  return relay_admission_rate(ch, p_a) / mu;
}

double max_arrival_primary(const ChannelProfile& ch, const Policy& pol) {
  double relay_service = ch.f_sd() * (1.0 - pol.p_q());
  double inflow = relay_admission_rate(ch, pol.p_a());
  double denom = relay_service + inflow;
  if (denom == 0.0) {
    throw DegeneratePolicyError("p_q = 1 with zero relay inflow: primary bound is 0/0");
  }
  return relay_service / denom * service_rate_primary(ch, pol.p_a());
}

double max_arrival_secondary(const ChannelProfile& ch, const Policy& pol, double lambda_p) {
  require_primary_stable(ch, pol.p_a(), lambda_p);
  double mu = service_rate_primary(ch, pol.p_a());
  return pol.p_q() * ch.f_sd() * (1.0 - lambda_p / mu);
}

StabilityVerdict is_stable(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  StabilityVerdict v;
  double max_p = 0.0;
  try {
    max_p = max_arrival_primary(ch, pol);
  } catch (const DegeneratePolicyError&) {
    v.margin_p = kSentinel;
    v.margin_s = kSentinel;
    return v;
  }
  v.margin_p = max_p - pt.lambda_p();
  if (pt.lambda_p() < service_rate_primary(ch, pol.p_a())) {
    v.margin_s = max_arrival_secondary(ch, pol, pt.lambda_p()) - pt.lambda_s();
  } else {
    v.margin_s = kSentinel;
  }
  v.stable = v.margin_p > 0.0 && v.margin_s > 0.0;
  return v;
}

double phase_transition_pq(const ChannelProfile& ch) { return 1.0 - ch.f_pd() / ch.f_sd(); }

double union_region_max_lambda_s(const ChannelProfile& ch, double lambda_p) {
  double overheard = ch.f_ps() * (1.0 - ch.f_pd());
  double denom = ch.f_pd() + overheard;
  if (denom == 0.0) {
    // PU can never deliver; only the idle PU leaves room for the SU.
    return lambda_p == 0.0 ? ch.f_sd() : 0.0;
  }
  double slope = (ch.f_sd() + overheard) / denom;
  double v = ch.f_sd() - slope * lambda_p;
  return v > 0.0 ? v : 0.0;
}

double mean_queue_primary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  require_primary_stable(ch, pol.p_a(), pt.lambda_p());
  double lp = pt.lambda_p();
  double mu = service_rate_primary(ch, pol.p_a());
  return (-lp * lp + lp) / (mu - lp);
}

RelayCoefficients relay_coefficients(const ChannelProfile& ch, const Policy& pol) {
  const double relay_service = (1.0 - pol.p_q()) * ch.f_sd();
  const double inflow = relay_admission_rate(ch, pol.p_a());
  const double mu = ch.f_pd() + inflow;

  RelayCoefficients c;
  c.m = inflow * ((relay_service - ch.f_pd()) / mu - relay_service - inflow);
  c.n = inflow * mu;
  c.alpha = relay_service + inflow;
  c.beta = mu * (-2.0 * relay_service - inflow);
  c.gamma = relay_service * mu * mu;
  return c;
}

double mean_queue_relay(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  require_relay_stable(ch, pol, pt.lambda_p());
  if (relay_admission_rate(ch, pol.p_a()) == 0.0) return 0.0;

  const double lp = pt.lambda_p();
  const auto c = relay_coefficients(ch, pol);
  const double num = c.m * lp * lp + c.n * lp;
  const double den = c.alpha * lp * lp + c.beta * lp + c.gamma;
  const double scale = std::abs(c.alpha * lp * lp) + std::abs(c.beta * lp) + std::abs(c.gamma);
  if (!(den > 1e-12 * scale)) {
    // A grid point on the boundary can pass the strict stability test by one
    // ulp while the denominator cancels to zero or below.
    if (std::abs(den) <= 1e-12 * scale) {
      throw UnstableError("relay queue critically stable: denominator cancels at lambda_p=" + std::to_string(lp));
    }
    // Inside the stable region the denominator factors into two positive terms.
    std::ostringstream msg;
    msg << "relay-queue denominator " << den << " <= 0 at a stable point (lambda_p=" << lp
        << ", p_q=" << pol.p_q() << ", p_a=" << pol.p_a() << ")";
    throw std::logic_error(msg.str());
  }
  return num / den;
}

SecondaryCoefficients secondary_coefficients(const ChannelProfile& ch, const Policy& pol,
                                             const OperatingPoint& pt) {
  const double mu = service_rate_primary(ch, pol.p_a());
  const double own = pol.p_q() * ch.f_sd();
  SecondaryCoefficients c;
  c.a_coef = own * (mu - 1.0);
  c.b_coef = mu - pt.lambda_p();
  c.c_coef = (pt.lambda_s() - own) * mu + own * pt.lambda_p();
  return c;
}

double mean_queue_secondary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  require_secondary_stable(ch, pol, pt);
  const auto c = secondary_coefficients(ch, pol, pt);
  if (!(c.b_coef > 0.0)) throw DomainError("secondary queue: B <= 0");
  if (c.c_coef == 0.0) throw DomainError("secondary queue: C = 0");
  // C is negative inside the region; rounding at the boundary can flip it.
  const double own = pol.p_q() * ch.f_sd();
  const double mu = service_rate_primary(ch, pol.p_a());
  const double c_scale = std::abs(pt.lambda_s() * mu) + std::abs(own * mu) + std::abs(own * pt.lambda_p());
  if (c.c_coef > -1e-12 * c_scale) {
    throw UnstableError("secondary queue critically stable: C cancels at lambda_s=" + std::to_string(pt.lambda_s()));
  }

  const double lp = pt.lambda_p();
  const double ls = pt.lambda_s();
  const double B = c.b_coef;
  return (lp * ls * c.a_coef + (ls * ls - ls) * B * (B + lp)) / (B * c.c_coef);
}

double delay_primary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  if (pt.lambda_p() == 0.0) throw UndefinedRateError("PU delay undefined at lambda_p = 0");
  return (mean_queue_primary(ch, pol, pt) + mean_queue_relay(ch, pol, pt)) / pt.lambda_p();
}

double delay_secondary(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  if (pt.lambda_s() == 0.0) throw UndefinedRateError("SU delay undefined at lambda_s = 0");
  return mean_queue_secondary(ch, pol, pt) / pt.lambda_s();
}

double empty_joint_probability(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  require_secondary_stable(ch, pol, pt);
  const double mu = service_rate_primary(ch, pol.p_a());
  const double own = pol.p_q() * ch.f_sd();
  return (own * (mu - pt.lambda_p()) - pt.lambda_s() * mu) / (own * mu);
}

double prob_primary_empty(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  require_primary_stable(ch, pol.p_a(), pt.lambda_p());
  return 1.0 - pt.lambda_p() / service_rate_primary(ch, pol.p_a());
}

double single_queue_delay(double lambda, double mu) {
  if (lambda == 0.0) throw UndefinedRateError("delay undefined at zero arrival rate");
  if (!(lambda < mu)) throw UnstableError("single queue unstable: lambda >= mu");
  return (1.0 - lambda) / (mu - lambda);
}

DelayReport evaluate(const ChannelProfile& ch, const Policy& pol, const OperatingPoint& pt) {
  if (!is_stable(ch, pol, pt).stable) throw UnstableError("operating point outside the stable region");
  DelayReport r;
  r.n_p = mean_queue_primary(ch, pol, pt);
  r.n_sp = mean_queue_relay(ch, pol, pt);
  r.n_s = mean_queue_secondary(ch, pol, pt);
  if (pt.lambda_p() > 0.0) r.d_p = (r.n_p + r.n_sp) / pt.lambda_p();
  if (pt.lambda_s() > 0.0) r.d_s = r.n_s / pt.lambda_s();
  r.g00 = empty_joint_probability(ch, pol, pt);
  r.epsilon = relay_fraction_epsilon(ch, pol.p_a());
  return r;
}

}  // namespace crq::analytics

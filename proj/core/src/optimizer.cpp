#include "crq/optimizer.hpp"

#include "crq/analytics.hpp"
#include "crq/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace crq::optimizer {
namespace {

double service_gap(const ChannelProfile& ch, const OperatingPoint& pt, double p_a) {
  const double gap = analytics::service_rate_primary(ch, p_a) - pt.lambda_p();
  if (!(gap > 0.0)) throw InfeasibleError("lambda_p >= mu_p at this p_a");
  return gap;
}

// Interior point of the open interval (lo, hi), offset from the preferred end.
double interior(double lo, double hi, bool near_low) {
  if (hi - lo > 2.0 * kInteriorOffset) return near_low ? lo + kInteriorOffset : hi - kInteriorOffset;
  return 0.5 * (lo + hi);
}

bool near(const StabilityVerdict& v) {
  return std::min(v.margin_p, v.margin_s) < kNearBoundaryMargin;
}

}  // namespace

std::string_view to_string(DecisionMode mode) {
  switch (mode) {
    case DecisionMode::cooperate: return "cooperate";
    case DecisionMode::no_cooperation: return "no_cooperation";
    case DecisionMode::infeasible: return "infeasible";
  }
  return "unknown";
}

double pq_lower_bound(const ChannelProfile& ch, const OperatingPoint& pt, double p_a) {
  const double gap = service_gap(ch, pt, p_a);
  return pt.lambda_s() * analytics::service_rate_primary(ch, p_a) / (ch.f_sd() * gap);
}

double pq_upper_bound(const ChannelProfile& ch, const OperatingPoint& pt, double p_a) {
  const double gap = service_gap(ch, pt, p_a);
  return 1.0 - pt.lambda_p() * analytics::relay_admission_rate(ch, p_a) / (ch.f_sd() * gap);
}

double no_cooperation_delay(const ChannelProfile& ch, double lambda_p) {
  return analytics::single_queue_delay(lambda_p, ch.f_pd());
}

PrimaryDelayDecision minimize_primary_delay(const ChannelProfile& ch, const OperatingPoint& pt) {
  if (pt.lambda_p() == 0.0) throw UndefinedRateError("PU delay undefined at lambda_p = 0");

  PrimaryDelayDecision d;
  d.threshold = analytics::phase_transition_pq(ch);
  if (!(pt.lambda_p() < analytics::service_rate_primary(ch, 1.0))) return d;

  const double p_min = pq_lower_bound(ch, pt, 1.0);
  const double p_max = pq_upper_bound(ch, pt, 1.0);
  d.pq_lower = p_min;
  d.pq_upper = p_max;
  const double lo = std::max(p_min, 0.0);
  const double hi = std::min(p_max, 1.0);
  if (!(lo < hi)) return d;

  if (p_min <= d.threshold) {
    const auto pol = Policy::make(interior(lo, hi, true), 1.0);
    const auto verdict = analytics::is_stable(ch, pol, pt);
    if (!verdict.stable) throw std::logic_error("cooperative optimum is not stable");
    d.mode = DecisionMode::cooperate;
    d.p_q_star = pol.p_q();
    d.p_a_star = pol.p_a();
    d.d_p_star = analytics::delay_primary(ch, pol, pt);
    d.near_boundary = near(verdict);
    return d;
  }

  // No cooperation: Q_p served at f_pd, the SU serves Q_s in every idle slot.
  const double margin_p = ch.f_pd() - pt.lambda_p();
  if (!(margin_p > 0.0)) return d;
  const double margin_s = ch.f_sd() * (1.0 - pt.lambda_p() / ch.f_pd()) - pt.lambda_s();
  if (!(margin_s > 0.0)) return d;
  d.mode = DecisionMode::no_cooperation;
  d.d_p_star = no_cooperation_delay(ch, pt.lambda_p());
  d.near_boundary = std::min(margin_p, margin_s) < kNearBoundaryMargin;
  return d;
}

SecondaryDelayDecision minimize_secondary_delay(const ChannelProfile& ch, const OperatingPoint& pt) {
  if (pt.lambda_s() == 0.0) throw UndefinedRateError("SU delay undefined at lambda_s = 0");

  SecondaryDelayDecision d;
  d.pq_lower = pq_lower_bound(ch, pt, 1.0);
  d.pq_upper = pq_upper_bound(ch, pt, 1.0);
  const double lo = std::max(d.pq_lower, 0.0);
  const double hi = std::min(d.pq_upper, 1.0);
  if (!(lo < hi)) throw InfeasibleError("no p_q keeps the system stable at p_a = 1");

  const auto pol = Policy::make(interior(lo, hi, false), 1.0);
  const auto verdict = analytics::is_stable(ch, pol, pt);
  if (!verdict.stable) throw std::logic_error("secondary optimum is not stable");
  d.p_q_star = pol.p_q();
  d.p_a_star = 1.0;
  d.d_s_star = analytics::delay_secondary(ch, pol, pt);
  d.near_boundary = near(verdict);
  return d;
}

}  // namespace crq::optimizer

#include "checks.hpp"

#include "crq/analytics.hpp"
#include "crq/errors.hpp"
#include "crq/optimizer.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace crq::optimizer {
namespace {

const auto kCh = ChannelProfile::make(0.3, 0.8, 0.4);
const auto kHigh = ChannelProfile::make(0.6, 0.8, 0.4);

TEST(Bounds, Examples) {
  EXPECT_EQ(pq_lower_bound(kCh, OperatingPoint::make(0.1, 0.0), 1.0), 0.0);
  EXPECT_EQ(pq_upper_bound(kCh, OperatingPoint::make(0.0, 0.1), 1.0), 1.0);
  const auto pt = OperatingPoint::make(0.1, 0.1);
  EXPECT_LT(pq_lower_bound(kCh, pt, 1.0), pq_lower_bound(kCh, pt, 0.5));
  EXPECT_NEAR(pq_lower_bound(kCh, pt, 1.0), 0.1 * 0.58 / (0.8 * 0.48), 1e-15);
  EXPECT_NEAR(pq_upper_bound(kCh, pt, 1.0), 1.0 - 0.1 * 0.28 / (0.8 * 0.48), 1e-15);
  EXPECT_THROW(pq_lower_bound(kCh, OperatingPoint::make(0.58, 0.1), 1.0), InfeasibleError);
  EXPECT_THROW(pq_upper_bound(kCh, OperatingPoint::make(0.3, 0.1), 0.0), InfeasibleError);
}

TEST(Bounds, MatchStabilityVerdict) {
  const auto pt = OperatingPoint::make(0.15, 0.12);
  for (double pa : {0.2, 0.6, 1.0}) {
    const double lo = pq_lower_bound(kCh, pt, pa);
    const double hi = pq_upper_bound(kCh, pt, pa);
    ASSERT_LT(lo, hi);
    EXPECT_TRUE(analytics::is_stable(kCh, Policy::make(lo + 1e-9, pa), pt).stable);
    EXPECT_TRUE(analytics::is_stable(kCh, Policy::make(hi - 1e-9, pa), pt).stable);
    EXPECT_FALSE(analytics::is_stable(kCh, Policy::make(lo - 1e-9, pa), pt).stable);
    EXPECT_FALSE(analytics::is_stable(kCh, Policy::make(hi + 1e-9, pa), pt).stable);
  }
}

TEST(MinimizePrimaryDelay, RequiresPrimaryTraffic) {
  EXPECT_THROW(minimize_primary_delay(kCh, OperatingPoint::make(0.0, 0.1)), UndefinedRateError);
}

TEST(MinimizePrimaryDelay, CooperatesAtTheLowerBound) {
  const auto pt = OperatingPoint::make(0.1, 0.2);
  const auto d = minimize_primary_delay(kCh, pt);
  ASSERT_EQ(d.mode, DecisionMode::cooperate);
  EXPECT_EQ(*d.p_a_star, 1.0);
  EXPECT_DOUBLE_EQ(*d.p_q_star, pq_lower_bound(kCh, pt, 1.0) + kInteriorOffset);
  const auto pol = Policy::make(*d.p_q_star, *d.p_a_star);
  EXPECT_DOUBLE_EQ(*d.d_p_star, analytics::delay_primary(kCh, pol, pt));
  const auto v = analytics::is_stable(kCh, pol, pt);
  EXPECT_TRUE(v.stable);
  EXPECT_GT(v.margin_p, 0.0);
  EXPECT_GT(v.margin_s, 0.0);
  EXPECT_TRUE(d.near_boundary);
  EXPECT_DOUBLE_EQ(d.threshold, 0.625);
}

TEST(MinimizePrimaryDelay, FallsBackWithoutCooperationPastTheThreshold) {
  const auto d = minimize_primary_delay(kHigh, OperatingPoint::make(0.2, 0.2));
  EXPECT_EQ(d.mode, DecisionMode::no_cooperation);
  EXPECT_FALSE(d.p_q_star);
  EXPECT_FALSE(d.p_a_star);
  EXPECT_DOUBLE_EQ(*d.d_p_star, (1.0 - 0.2) / (0.6 - 0.2));
  EXPECT_DOUBLE_EQ(*d.d_p_star, no_cooperation_delay(kHigh, 0.2));
}

TEST(MinimizePrimaryDelay, InfeasibleWhenNothingIsStable) {
  const auto d = minimize_primary_delay(kCh, OperatingPoint::make(0.5, 0.3));
  EXPECT_EQ(d.mode, DecisionMode::infeasible);
  EXPECT_FALSE(d.d_p_star);
  EXPECT_EQ(minimize_primary_delay(kCh, OperatingPoint::make(0.6, 0.0)).mode, DecisionMode::infeasible);
}

TEST(MinimizePrimaryDelay, ThresholdSweepsAtBothChannels) {
  for (const auto& r : {checks::primary_threshold_no_cooperation(kHigh, 0.2),
                        checks::primary_threshold_cooperation(kCh, 0.2)}) {
    EXPECT_TRUE(r.pass()) << r.summary << ": " << r.failures.front();
  }
}

TEST(MinimizePrimaryDelay, NeverWorseThanTheGrid) {
  for (const auto& ch : {kCh, kHigh}) {
    for (double ls : {0.05, 0.2}) {
      const auto r = checks::primary_against_grid(ch, ls);
      EXPECT_GT(r.evaluated, 5u);
      EXPECT_TRUE(r.pass()) << r.failures.front();
    }
  }
}

// Raising f_pd moves the decision from cooperation to no cooperation exactly
// where the lower p_q bound at full admission crosses 1 - f_pd / f_sd.
TEST(MinimizePrimaryDelay, ModeSwitchesWhereTheBoundCrossesTheThreshold) {
  const auto pt = OperatingPoint::make(0.1, 0.2);
  std::optional<double> switch_at;
  DecisionMode previous = DecisionMode::cooperate;
  for (double f_pd : checks::linspace(0.05, 0.75, 71)) {
    const auto ch = ChannelProfile::make(f_pd, 0.8, 0.4);
    const auto d = minimize_primary_delay(ch, pt);
    const bool below = pq_lower_bound(ch, pt, 1.0) <= analytics::phase_transition_pq(ch);
    EXPECT_EQ(d.mode, below ? DecisionMode::cooperate : DecisionMode::no_cooperation) << f_pd;
    if (d.mode != previous && !switch_at) switch_at = f_pd;
    previous = d.mode;
    const auto g = checks::grid_minimum(ch, pt, true);
    ASSERT_TRUE(g.found);
    EXPECT_LE(*d.d_p_star, g.value + g.cell_variation) << f_pd;
  }
  ASSERT_TRUE(switch_at);
  EXPECT_GT(*switch_at, 0.3);
  EXPECT_LT(*switch_at, 0.6);
}

TEST(MinimizeSecondaryDelay, SitsJustBelowTheUpperBound) {
  const auto pt = OperatingPoint::make(0.1, 0.1);
  const auto d = minimize_secondary_delay(kCh, pt);
  EXPECT_DOUBLE_EQ(d.p_q_star, pq_upper_bound(kCh, pt, 1.0) - kInteriorOffset);
  EXPECT_EQ(d.p_a_star, 1.0);
  EXPECT_DOUBLE_EQ(d.d_s_star, analytics::delay_secondary(kCh, Policy::make(d.p_q_star, 1.0), pt));
  EXPECT_TRUE(analytics::is_stable(kCh, Policy::make(d.p_q_star, 1.0), pt).stable);
  EXPECT_TRUE(d.near_boundary);
}

TEST(MinimizeSecondaryDelay, MatchesDenseLineSearch) {
  for (auto [lp, ls] : {std::pair{0.1, 0.1}, {0.2, 0.1}, {0.05, 0.3}, {0.2, 0.25}}) {
    const auto pt = OperatingPoint::make(lp, ls);
    const auto d = minimize_secondary_delay(kCh, pt);
    double best = std::numeric_limits<double>::infinity();
    double step_change = 0.0;
    double previous = std::numeric_limits<double>::quiet_NaN();
    const auto grid = checks::linspace(d.pq_lower, d.pq_upper, 1001);
    // Interior points only: both ends are critically stable.
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const double pq = grid[i];
      const auto pol = Policy::make(pq, 1.0);
      if (!analytics::is_stable(kCh, pol, pt).stable) continue;
      const double v = analytics::delay_secondary(kCh, pol, pt);
      if (!std::isnan(previous)) step_change = std::abs(v - previous);
      previous = v;
      best = std::min(best, v);
    }
    EXPECT_LE(d.d_s_star, best + 1e-12);
    EXPECT_GE(d.d_s_star, best - step_change);
  }
}

TEST(MinimizeSecondaryDelay, FullAdmissionBeatsTheTwoDimensionalGrid) {
  const auto r = checks::secondary_against_grid(
      kCh, {OperatingPoint::make(0.1, 0.1), OperatingPoint::make(0.2, 0.1), OperatingPoint::make(0.05, 0.3)});
  EXPECT_TRUE(r.pass()) << r.failures.front();
}

TEST(MinimizeSecondaryDelay, Errors) {
  EXPECT_THROW(minimize_secondary_delay(kCh, OperatingPoint::make(0.1, 0.0)), UndefinedRateError);
  EXPECT_THROW(minimize_secondary_delay(kCh, OperatingPoint::make(0.5, 0.3)), InfeasibleError);
}

TEST(NoCooperationDelay, SingleQueueForm) {
  EXPECT_DOUBLE_EQ(no_cooperation_delay(kCh, 0.1), 4.5);
  EXPECT_THROW(no_cooperation_delay(kCh, 0.3), UnstableError);
}

}  // namespace
}  // namespace crq::optimizer

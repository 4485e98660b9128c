#include "crq/config.hpp"
#include "crq/errors.hpp"
#include "crq/model.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>

namespace crq {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TEST(ChannelProfile, AcceptsReferenceChannel) {
  const auto ch = ChannelProfile::make(0.3, 0.8, 0.4);
  EXPECT_EQ(ch.f_pd(), 0.3);
  EXPECT_EQ(ch.f_sd(), 0.8);
  EXPECT_EQ(ch.f_ps(), 0.4);
}

TEST(ChannelProfile, RejectsDirectLinkNotWorseThanSecondary) {
  EXPECT_THROW(ChannelProfile::make(0.8, 0.3, 0.4), InvalidArgument);
  EXPECT_THROW(ChannelProfile::make(0.5, 0.5, 0.4), InvalidArgument);
}

TEST(ChannelProfile, AcceptsClosedIntervalEndpoints) {
  EXPECT_NO_THROW(ChannelProfile::make(0.0, 1.0, 0.0));
  EXPECT_NO_THROW(ChannelProfile::make(0.0, 1.0, 1.0));
}

TEST(ChannelProfile, RejectsOutOfRangeAndNaN) {
  for (double bad : {-0.1, 1.1, kNaN, std::numeric_limits<double>::infinity()}) {
    EXPECT_THROW(ChannelProfile::make(bad, 0.8, 0.4), InvalidArgument) << bad;
    EXPECT_THROW(ChannelProfile::make(0.3, bad, 0.4), InvalidArgument) << bad;
    EXPECT_THROW(ChannelProfile::make(0.3, 0.8, bad), InvalidArgument) << bad;
  }
}

TEST(Policy, RejectsOutOfRangeAndNaN) {
  EXPECT_NO_THROW(Policy::make(0.0, 0.0));
  EXPECT_NO_THROW(Policy::make(1.0, 1.0));
  for (double bad : {-1e-9, 1.0 + 1e-9, kNaN}) {
    EXPECT_THROW(Policy::make(bad, 0.5), InvalidArgument);
    EXPECT_THROW(Policy::make(0.5, bad), InvalidArgument);
  }
}

TEST(OperatingPoint, RejectsOutOfRangeAndNaN) {
  EXPECT_NO_THROW(OperatingPoint::make(0.0, 0.0));
  for (double bad : {-0.5, 2.0, kNaN}) {
    EXPECT_THROW(OperatingPoint::make(bad, 0.1), InvalidArgument);
    EXPECT_THROW(OperatingPoint::make(0.1, bad), InvalidArgument);
  }
}

TEST(ModelRoundTrip, RandomValuesSurviveConfigText) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    const auto ch = ChannelProfile::make(std::min(a, b), std::max(a, b), u(rng));
    const auto pol = Policy::make(u(rng), i % 7 == 0 ? 1.0 : u(rng));
    const auto pt = OperatingPoint::make(u(rng), i % 5 == 0 ? 0.0 : u(rng));

    KeyValueConfig cfg;
    write_channel(cfg, ch);
    write_policy(cfg, pol);
    write_point(cfg, pt);
    const auto back = KeyValueConfig::parse(cfg.to_text());
    EXPECT_EQ(read_channel(back), ch);
    EXPECT_EQ(read_policy(back), pol);
    EXPECT_EQ(read_point(back), pt);
  }
}

TEST(ModelRoundTrip, InvalidValuesInTextBecomeConfigErrors) {
  const auto cfg = KeyValueConfig::parse("f_pd = 0.9\nf_sd = 0.8\nf_ps = 0.4\n");
  EXPECT_THROW(read_channel(cfg), ConfigError);
}

}  // namespace
}  // namespace crq

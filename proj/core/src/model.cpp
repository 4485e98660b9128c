#include "crq/model.hpp"

#include "crq/errors.hpp"

#include <cmath>
#include <string>

namespace crq {
namespace {

void require_probability(double v, const char* name) {
  // NaN fails both comparisons.
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

ChannelProfile ChannelProfile::make(double f_pd, double f_sd, double f_ps) {
  require_probability(f_pd, "f_pd");
  require_probability(f_sd, "f_sd");
  require_probability(f_ps, "f_ps");
  if (!(f_pd < f_sd)) {
    throw InvalidArgument("channel requires f_pd < f_sd");
  }
  return ChannelProfile(f_pd, f_sd, f_ps);
}

Policy Policy::make(double p_q, double p_a) {
  require_probability(p_q, "p_q");
  require_probability(p_a, "p_a");
  return Policy(p_q, p_a);
}

OperatingPoint OperatingPoint::make(double lambda_p, double lambda_s) {
  require_probability(lambda_p, "lambda_p");
  require_probability(lambda_s, "lambda_s");
  return OperatingPoint(lambda_p, lambda_s);
}

}  // namespace crq

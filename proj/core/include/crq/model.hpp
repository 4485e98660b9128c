#pragma once

// Validated domain values shared by every module. All types are immutable
// once constructed and compare by value.

namespace crq {

/// Per-slot link success probabilities of the three links in the system.
class ChannelProfile {
public:
  /// Rejects NaN, values outside [0, 1], and f_pd >= f_sd.
  static ChannelProfile make(double f_pd, double f_sd, double f_ps);

  double f_pd() const noexcept { return f_pd_; }  ///< PU -> destination
  double f_sd() const noexcept { return f_sd_; }  ///< SU -> destination
  double f_ps() const noexcept { return f_ps_; }  ///< PU -> SU (overhearing)

  bool operator==(const ChannelProfile&) const = default;

private:
  ChannelProfile(double f_pd, double f_sd, double f_ps) : f_pd_(f_pd), f_sd_(f_sd), f_ps_(f_ps) {}

  double f_pd_;
  double f_sd_;
  double f_ps_;
};

/// Randomized-service cooperative policy: the SU serves its own queue with
/// probability p_q (else the relay queue) and admits an overheard PU packet
/// to the relay queue with probability p_a.
class Policy {
public:
  static Policy make(double p_q, double p_a);

  double p_q() const noexcept { return p_q_; }
  double p_a() const noexcept { return p_a_; }

  bool operator==(const Policy&) const = default;

private:
  Policy(double p_q, double p_a) : p_q_(p_q), p_a_(p_a) {}

  double p_q_;
  double p_a_;
};

/// Bernoulli arrival rates (packets/slot) at the PU and SU.
class OperatingPoint {
public:
  static OperatingPoint make(double lambda_p, double lambda_s);

  double lambda_p() const noexcept { return lambda_p_; }
  double lambda_s() const noexcept { return lambda_s_; }

  bool operator==(const OperatingPoint&) const = default;

private:
  OperatingPoint(double lambda_p, double lambda_s) : lambda_p_(lambda_p), lambda_s_(lambda_s) {}

  double lambda_p_;
  double lambda_s_;
};

inline ChannelProfile make_channel(double f_pd, double f_sd, double f_ps) {
  return ChannelProfile::make(f_pd, f_sd, f_ps);
}

/// Stability decision plus the distance of each arrival rate to its bound.
/// `stable` holds iff both margins are strictly positive.
struct StabilityVerdict {
  bool stable = false;
  double margin_p = 0.0;
  double margin_s = 0.0;
};

}  // namespace crq

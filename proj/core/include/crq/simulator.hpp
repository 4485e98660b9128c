#pragma once

#include "crq/model.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace crq {

enum class PolicyKind {
  randomized,             ///< SU picks Q_s w.p. p_q else Q_sp; idles if the pick is empty
  strict_priority_relay,  ///< Q_sp served whenever non-empty, p_a forced to 1
  no_cooperation,         ///< nothing admitted, SU always serves Q_s
};

std::string_view to_string(PolicyKind kind);
/// Throws InvalidArgument for unknown names.
PolicyKind parse_policy_kind(std::string_view name);

enum class Origin : std::uint8_t { primary, secondary };

/// A queued packet. Relayed PU packets keep their arrival slot across the
/// Q_p -> Q_sp handoff so PU delay covers both queues.
struct Packet {
  std::int64_t arrival_slot = 0;
  Origin origin = Origin::primary;
};

struct Scenario {
  ChannelProfile channel;
  OperatingPoint point;
  Policy policy;
  PolicyKind kind = PolicyKind::randomized;
  std::uint64_t slots = 1'000'000;
  std::uint64_t warmup_slots = 10'000;
  std::uint64_t seed = 1;
  /// Any queue longer than this aborts the run with RunAborted.
  std::uint64_t queue_cap = 10'000'000;

  /// Throws InvalidArgument unless slots > warmup_slots.
  void validate() const;
};

/// Statistics over the measurement window (slots at or after warmup).
/// Delays, throughput and counts cover packets arriving in the window;
/// lengths and emptiness fractions are time averages at slot starts.
/// Undefined means (no deliveries) are NaN.
struct SimStats {
  double throughput_p = 0.0;
  double throughput_s = 0.0;
  double mean_delay_p = 0.0;
  double mean_delay_s = 0.0;
  double mean_len_p = 0.0;
  double mean_len_sp = 0.0;
  double mean_len_s = 0.0;
  double frac_both_empty = 0.0;
  double frac_primary_empty = 0.0;
  std::uint64_t arrivals_p = 0;
  std::uint64_t arrivals_s = 0;
  std::uint64_t delivered_p = 0;
  std::uint64_t delivered_s = 0;
  /// Window packets still queued at the horizon.
  std::uint64_t backlog_p = 0;
  std::uint64_t backlog_s = 0;
  std::uint64_t relayed_count = 0;
  /// PU idle, SU picked an empty queue while the other one had packets.
  std::uint64_t wasted_slots = 0;
  /// Queue lengths at the horizon (replication 0 when pooled).
  std::uint64_t final_len_p = 0;
  std::uint64_t final_len_sp = 0;
  std::uint64_t final_len_s = 0;
  /// 95% normal-approximation half-widths: batch means within one run,
  /// across replications when pooled.
  double ci_halfwidth_delay_p = 0.0;
  double ci_halfwidth_delay_s = 0.0;
  std::size_t replications = 1;
};

/// Runs the slot-level protocol once.
SimStats simulate(const Scenario& sc);

/// Independent replications pooled with equal weight. Replication 0 uses
/// sc.seed, so replications == 1 reproduces simulate() exactly. Work is spread
/// over `threads` workers (0 = hardware concurrency); results do not depend
/// on the thread count.
SimStats replicate(const Scenario& sc, std::size_t replications, unsigned threads = 0);

/// Deterministic child seed; derive_seed(base, 0) == base.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace crq

#include "crq/simulator.hpp"

#include "crq/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <random>
#include <thread>
#include <vector>

namespace crq {
namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::size_t kBatches = 20;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// One independent generator per random decision so that changing the policy
// never shifts the arrival or channel sample paths.
enum Stream : std::size_t {
  kPuDest,
  kPuDecode,
  kAdmission,
  kSuSelect,
  kSuDest,
  kArrivalP,
  kArrivalS,
  kStreamCount
};

class Substreams {
public:
  explicit Substreams(std::uint64_t seed) {
    for (std::size_t i = 0; i < kStreamCount; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i), 0x5eedu};
      engines_[i].seed(seq);
    }
  }

  // Uniform on [0, 1) from the top 53 bits; portable across standard libraries.
  double uniform(Stream s) { return static_cast<double>(engines_[s]() >> 11) * 0x1.0p-53; }

private:
  std::array<std::mt19937_64, kStreamCount> engines_;
};

struct BatchAccumulator {
  std::array<double, kBatches> sum{};
  std::array<std::uint64_t, kBatches> count{};

  void add(std::size_t batch, double v) {
    sum[batch] += v;
    ++count[batch];
  }

  double halfwidth() const {
    std::vector<double> means;
    for (std::size_t b = 0; b < kBatches; ++b) {
      if (count[b] > 0) means.push_back(sum[b] / static_cast<double>(count[b]));
    }
    if (means.size() < 2) return kNaN;
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(means.size());
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    double sd = std::sqrt(ss / static_cast<double>(means.size() - 1));
    return kZ95 * sd / std::sqrt(static_cast<double>(means.size()));
  }
};

double ratio(double num, std::uint64_t den) {
  return den == 0 ? kNaN : num / static_cast<double>(den);
}

}  // namespace

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::randomized: return "randomized";
    case PolicyKind::strict_priority_relay: return "strict_priority_relay";
    case PolicyKind::no_cooperation: return "no_cooperation";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "randomized") return PolicyKind::randomized;
  if (name == "strict_priority_relay") return PolicyKind::strict_priority_relay;
  if (name == "no_cooperation") return PolicyKind::no_cooperation;
  throw InvalidArgument("unknown policy kind `" + std::string(name) + "`");
}

void Scenario::validate() const {
  if (!(slots > warmup_slots)) throw InvalidArgument("scenario requires slots > warmup_slots");
  if (queue_cap == 0) throw InvalidArgument("queue_cap must be positive");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  if (index == 0) return base;
  return splitmix64(base ^ splitmix64(index));
}

SimStats simulate(const Scenario& sc) {
  sc.validate();

  const double f_pd = sc.channel.f_pd();
  const double f_sd = sc.channel.f_sd();
  const double f_ps = sc.channel.f_ps();
  const double lambda_p = sc.point.lambda_p();
  const double lambda_s = sc.point.lambda_s();
  const double p_q = sc.policy.p_q();
  double p_a = sc.policy.p_a();
  if (sc.kind == PolicyKind::strict_priority_relay) p_a = 1.0;
  if (sc.kind == PolicyKind::no_cooperation) p_a = 0.0;

  const auto warmup = static_cast<std::int64_t>(sc.warmup_slots);
  const auto horizon = static_cast<std::int64_t>(sc.slots);
  const auto measured = sc.slots - sc.warmup_slots;

  Substreams rng(sc.seed);
  std::deque<Packet> q_p;
  std::deque<Packet> q_sp;
  std::deque<Packet> q_s;

  SimStats st;
  double delay_sum_p = 0.0;
  double delay_sum_s = 0.0;
  double len_sum_p = 0.0;
  double len_sum_sp = 0.0;
  double len_sum_s = 0.0;
  std::uint64_t both_empty = 0;
  std::uint64_t primary_empty = 0;
  BatchAccumulator batches_p;
  BatchAccumulator batches_s;

  auto batch_of = [&](std::int64_t t) {
    return static_cast<std::size_t>(static_cast<std::uint64_t>(t - warmup) * kBatches / measured);
  };

  auto deliver = [&](std::deque<Packet>& q, std::int64_t t) {
    const Packet pkt = q.front();
    q.pop_front();
    if (pkt.arrival_slot < warmup) return;
    const double delay = static_cast<double>(t - pkt.arrival_slot);
    if (pkt.origin == Origin::primary) {
      ++st.delivered_p;
      delay_sum_p += delay;
      batches_p.add(batch_of(t), delay);
    } else {
      ++st.delivered_s;
      delay_sum_s += delay;
      batches_s.add(batch_of(t), delay);
    }
  };

  for (std::int64_t t = 0; t < horizon; ++t) {
    const bool measuring = t >= warmup;
    if (measuring) {
      len_sum_p += static_cast<double>(q_p.size());
      len_sum_sp += static_cast<double>(q_sp.size());
      len_sum_s += static_cast<double>(q_s.size());
      if (q_p.empty()) {
        ++primary_empty;
        if (q_s.empty()) ++both_empty;
      }
    }

    // Every stream advances every slot (common random numbers).
    const double u_pd = rng.uniform(kPuDest);
    const double u_ps = rng.uniform(kPuDecode);
    const double u_adm = rng.uniform(kAdmission);
    const double u_sel = rng.uniform(kSuSelect);
    const double u_sd = rng.uniform(kSuDest);
    const double u_ap = rng.uniform(kArrivalP);
    const double u_as = rng.uniform(kArrivalS);

    if (!q_p.empty()) {
      if (u_pd < f_pd) {
        deliver(q_p, t);
      } else if (u_ps < f_ps && u_adm < p_a) {
        q_sp.push_back(q_p.front());
        q_p.pop_front();
        if (measuring) ++st.relayed_count;
      }
    } else {
      std::deque<Packet>* target = nullptr;
      std::deque<Packet>* other = nullptr;
      switch (sc.kind) {
        case PolicyKind::randomized:
          if (u_sel < p_q) {
            target = &q_s;
            other = &q_sp;
          } else {
            target = &q_sp;
            other = &q_s;
          }
          break;
        case PolicyKind::strict_priority_relay:
          target = q_sp.empty() ? &q_s : &q_sp;
          other = target == &q_s ? &q_sp : &q_s;
          break;
        case PolicyKind::no_cooperation:
          target = &q_s;
          other = &q_sp;
          break;
      }
      if (target->empty()) {
        if (!other->empty() && measuring) ++st.wasted_slots;
      } else if (u_sd < f_sd) {
        deliver(*target, t);
      }
    }

    // Arrivals land at the end of the slot and are first served next slot.
    if (u_ap < lambda_p) {
      q_p.push_back(Packet{t, Origin::primary});
      if (measuring) ++st.arrivals_p;
    }
    if (u_as < lambda_s) {
      q_s.push_back(Packet{t, Origin::secondary});
      if (measuring) ++st.arrivals_s;
    }

    if (q_p.size() > sc.queue_cap || q_sp.size() > sc.queue_cap || q_s.size() > sc.queue_cap) {
      throw RunAborted("queue length exceeded cap at slot " + std::to_string(t) +
                       "; configuration is unstable");
    }
  }

  auto tagged = [&](const std::deque<Packet>& q) {
    return static_cast<std::uint64_t>(
        std::count_if(q.begin(), q.end(), [&](const Packet& p) { return p.arrival_slot >= warmup; }));
  };
  st.backlog_p = tagged(q_p) + tagged(q_sp);
  st.backlog_s = tagged(q_s);
  st.final_len_p = q_p.size();
  st.final_len_sp = q_sp.size();
  st.final_len_s = q_s.size();

  const double window = static_cast<double>(measured);
  st.throughput_p = static_cast<double>(st.delivered_p) / window;
  st.throughput_s = static_cast<double>(st.delivered_s) / window;
  st.mean_delay_p = ratio(delay_sum_p, st.delivered_p);
  st.mean_delay_s = ratio(delay_sum_s, st.delivered_s);
  st.mean_len_p = len_sum_p / window;
  st.mean_len_sp = len_sum_sp / window;
  st.mean_len_s = len_sum_s / window;
  st.frac_both_empty = static_cast<double>(both_empty) / window;
  st.frac_primary_empty = static_cast<double>(primary_empty) / window;
  st.ci_halfwidth_delay_p = batches_p.halfwidth();
  st.ci_halfwidth_delay_s = batches_s.halfwidth();
  st.replications = 1;
  return st;
}

namespace {

struct Pooled {
  double mean = 0.0;
  double halfwidth = 0.0;
};

Pooled pool(const std::vector<SimStats>& runs, double SimStats::*field) {
  const auto n = static_cast<double>(runs.size());
  double mean = 0.0;
  for (const auto& r : runs) mean += r.*field;
  mean /= n;
  double ss = 0.0;
  for (const auto& r : runs) ss += (r.*field - mean) * (r.*field - mean);
  double sd = std::sqrt(ss / (n - 1.0));
  return {mean, kZ95 * sd / std::sqrt(n)};
}

}  // namespace

SimStats replicate(const Scenario& sc, std::size_t replications, unsigned threads) {
  if (replications == 0) throw InvalidArgument("replications must be >= 1");
  sc.validate();
  if (replications == 1) return simulate(sc);

  std::vector<SimStats> runs(replications);
  std::vector<std::exception_ptr> errors(replications);
  auto run_one = [&](std::size_t r) {
    try {
      Scenario child = sc;
      child.seed = derive_seed(sc.seed, r);
      runs[r] = simulate(child);
    } catch (...) {
      errors[r] = std::current_exception();
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, replications));
  if (workers <= 1) {
    for (std::size_t r = 0; r < replications; ++r) run_one(r);
  } else {
    std::vector<std::thread> pool_threads;
    pool_threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool_threads.emplace_back([&, w] {
        for (std::size_t r = w; r < replications; r += workers) run_one(r);
      });
    }
    for (auto& th : pool_threads) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SimStats out;
  out.replications = replications;
  for (auto field : {&SimStats::throughput_p, &SimStats::throughput_s, &SimStats::mean_len_p,
                     &SimStats::mean_len_sp, &SimStats::mean_len_s, &SimStats::frac_both_empty,
                     &SimStats::frac_primary_empty}) {
    out.*field = pool(runs, field).mean;
  }
  const auto dp = pool(runs, &SimStats::mean_delay_p);
  const auto ds = pool(runs, &SimStats::mean_delay_s);
  out.mean_delay_p = dp.mean;
  out.mean_delay_s = ds.mean;
  out.ci_halfwidth_delay_p = dp.halfwidth;
  out.ci_halfwidth_delay_s = ds.halfwidth;
  for (const auto& r : runs) {
    out.arrivals_p += r.arrivals_p;
    out.arrivals_s += r.arrivals_s;
    out.delivered_p += r.delivered_p;
    out.delivered_s += r.delivered_s;
    out.backlog_p += r.backlog_p;
    out.backlog_s += r.backlog_s;
    out.relayed_count += r.relayed_count;
    out.wasted_slots += r.wasted_slots;
  }
  out.final_len_p = runs.front().final_len_p;
  out.final_len_sp = runs.front().final_len_sp;
  out.final_len_s = runs.front().final_len_s;
  return out;
}

}  // namespace crq

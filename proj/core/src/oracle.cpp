#include "crq/oracle.hpp"

#include "crq/analytics.hpp"
#include "crq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace crq::oracle {
namespace {

struct Move {
  int d_first;
  int d_second;
  double probability;
};

// Departure outcomes of one slot given the current state, before arrivals.
std::vector<Move> departures(const ChainSpec& spec, std::size_t first, std::size_t second) {
  const auto& ch = spec.channel;
  const double p_a = spec.policy.p_a();
  const double mu = analytics::service_rate_primary(ch, p_a);
  const double relayed = analytics::relay_admission_rate(ch, p_a);

  if (first > 0) {
    // PU busy: the SU stays silent.
    if (spec.pair == ChainPair::primary_relay) {
      return {{-1, +1, relayed}, {-1, 0, ch.f_pd()}, {0, 0, 1.0 - mu}};
    }
    return {{-1, 0, mu}, {0, 0, 1.0 - mu}};
  }
  if (second > 0) {
    const double pick =
        spec.pair == ChainPair::primary_relay ? 1.0 - spec.policy.p_q() : spec.policy.p_q();
    const double served = pick * ch.f_sd();
    return {{0, -1, served}, {0, 0, 1.0 - served}};
  }
  return {{0, 0, 1.0}};
}

}  // namespace

std::string_view to_string(ChainPair pair) {
  return pair == ChainPair::primary_secondary ? "primary_secondary" : "primary_relay";
}

ChainPair parse_chain_pair(std::string_view name) {
  if (name == "primary_secondary") return ChainPair::primary_secondary;
  if (name == "primary_relay") return ChainPair::primary_relay;
  throw InvalidArgument("unknown chain pair `" + std::string(name) + "`");
}

void ChainSpec::validate() const {
  if (truncation < 4) throw InvalidArgument("truncation must be >= 4");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be > 0");
  if (max_iterations == 0) throw InvalidArgument("max_iterations must be > 0");
}

double TransitionModel::probability(std::size_t from, std::size_t to) const {
  for (const auto& e : row(from)) {
    if (e.to == to) return e.probability;
  }
  return 0.0;
}

void TransitionModel::propagate(std::span<const double> in, std::vector<double>& out) const {
  out.assign(states(), 0.0);
  const std::size_t n = states();
  for (std::size_t s = 0; s < n; ++s) {
    const double mass = in[s];
    if (mass == 0.0) continue;
    for (std::size_t k = offsets_[s]; k < offsets_[s + 1]; ++k) {
      out[entries_[k].to] += mass * entries_[k].probability;
    }
  }
}

TransitionModel build_transitions(const ChainSpec& spec) {
  spec.validate();
  const std::size_t T = spec.truncation;
  const double lp = spec.point.lambda_p();
  // The relay chain has no exogenous arrivals on its second coordinate.
  const double ls = spec.pair == ChainPair::primary_secondary ? spec.point.lambda_s() : 0.0;

  const Move arrivals[] = {{+1, +1, lp * ls},
                           {+1, 0, lp * (1.0 - ls)},
                           {0, +1, (1.0 - lp) * ls},
                           {0, 0, (1.0 - lp) * (1.0 - ls)}};

  TransitionModel model;
  model.truncation_ = T;
  model.offsets_.reserve(T * T + 1);
  model.entries_.reserve(T * T * 6);
  model.offsets_.push_back(0);

  auto clamp = [T](std::size_t base, int delta) {
    auto v = static_cast<long long>(base) + delta;
    v = std::clamp<long long>(v, 0, static_cast<long long>(T) - 1);
    return static_cast<std::size_t>(v);
  };

  std::vector<TransitionModel::Entry> row;
  for (std::size_t i = 0; i < T; ++i) {
    for (std::size_t j = 0; j < T; ++j) {
      row.clear();
      for (const auto& d : departures(spec, i, j)) {
        if (d.probability == 0.0) continue;
        const std::size_t di = static_cast<std::size_t>(static_cast<long long>(i) + d.d_first);
        const std::size_t dj = static_cast<std::size_t>(static_cast<long long>(j) + d.d_second);
        for (const auto& a : arrivals) {
          const double p = d.probability * a.probability;
          if (p == 0.0) continue;
          const auto to = static_cast<std::uint32_t>(model.index(clamp(di, a.d_first), clamp(dj, a.d_second)));
          auto it = std::find_if(row.begin(), row.end(), [to](const auto& e) { return e.to == to; });
          if (it == row.end()) {
            row.push_back({to, p});
          } else {
            it->probability += p;
          }
        }
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.to < b.to; });
      model.entries_.insert(model.entries_.end(), row.begin(), row.end());
      model.offsets_.push_back(model.entries_.size());
    }
  }
  return model;
}

StationarySolution solve_stationary(const ChainSpec& spec) {
  const TransitionModel model = build_transitions(spec);
  const std::size_t T = spec.truncation;
  const std::size_t n = model.states();

  std::vector<double> pi(n, 0.0);
  std::vector<double> next;
  pi[0] = 1.0;

  StationarySolution sol;
  sol.truncation = T;
  bool converged = false;
  for (std::size_t it = 1; it <= spec.max_iterations; ++it) {
    model.propagate(pi, next);
    double residual = 0.0;
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      residual = std::max(residual, std::abs(next[s] - pi[s]));
      total += next[s];
    }
    for (auto& v : next) v /= total;
    pi.swap(next);
    sol.iterations = it;
    sol.residual = residual;
    if (residual < spec.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "power iteration did not converge in " << spec.max_iterations
        << " iterations (residual " << sol.residual << ")";
    throw NonConvergenceError(msg.str());
  }

  for (std::size_t i = 0; i < T; ++i) {
    double row_mass = 0.0;
    for (std::size_t j = 0; j < T; ++j) {
      const double p = pi[model.index(i, j)];
      row_mass += p;
      sol.mean_second += static_cast<double>(j) * p;
      if (i == T - 1 || j == T - 1) sol.mass_at_boundary += p;
    }
    sol.mean_first += static_cast<double>(i) * row_mass;
    if (i == 0) sol.p_first_empty = row_mass;
  }
  sol.p00 = pi[0];
  sol.distribution = std::move(pi);

  if (sol.mass_at_boundary > spec.max_boundary_mass) {
    std::ostringstream msg;
    msg << "truncation " << T << " too small: boundary mass " << sol.mass_at_boundary;
    throw TruncationError(msg.str());
  }
  return sol;
}

}  // namespace crq::oracle

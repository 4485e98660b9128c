#include "crq/cli/commands.hpp"

#include "crq/analytics.hpp"
#include "crq/cli/points.hpp"
#include "crq/csv.hpp"
#include "crq/errors.hpp"
#include "crq/optimizer.hpp"
#include "crq/oracle.hpp"
#include "crq/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <set>
#include <thread>
#include <vector>

namespace crq::cli {
namespace {

using csv::number;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "f_pd",      "f_sd",       "f_ps",        "p_q",         "p_a",       "lambda_p",
      "lambda_s",  "sweep",      "sweep_start", "sweep_stop",  "sweep_steps", "policy",
      "slots",     "warmup",     "seed",        "replications", "queue_cap", "threads",
      "tolerance", "margin",     "truncation",  "residual_tolerance", "max_iterations",
      "max_boundary_mass", "pair"};
  return keys;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::uint64_t u64_or(const KeyValueConfig& cfg, const std::string& key, std::uint64_t fallback) {
  auto v = cfg.get_u64(key);
  return v ? *v : fallback;
}

double double_or(const KeyValueConfig& cfg, const std::string& key, double fallback) {
  auto v = cfg.get_double(key);
  return v ? *v : fallback;
}

struct SimOptions {
  PolicyKind kind = PolicyKind::randomized;
  std::uint64_t slots = 1'000'000;
  std::uint64_t warmup = 10'000;
  std::uint64_t seed = 1;
  std::uint64_t replications = 1;
  std::uint64_t queue_cap = 10'000'000;
  unsigned threads = 0;
};

SimOptions read_sim_options(const KeyValueConfig& cfg) {
  SimOptions o;
  if (auto k = cfg.get_string("policy")) {
    try {
      o.kind = parse_policy_kind(*k);
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what(), cfg.line_of("policy"));
    }
  }
  o.slots = u64_or(cfg, "slots", o.slots);
  o.warmup = u64_or(cfg, "warmup", o.warmup);
  o.seed = u64_or(cfg, "seed", o.seed);
  o.replications = u64_or(cfg, "replications", o.replications);
  o.queue_cap = u64_or(cfg, "queue_cap", o.queue_cap);
  o.threads = static_cast<unsigned>(u64_or(cfg, "threads", 0));
  if (!(o.slots > o.warmup)) throw ConfigError("slots must exceed warmup", cfg.line_of("slots"));
  if (o.replications == 0) throw ConfigError("replications must be >= 1", cfg.line_of("replications"));
  if (o.queue_cap == 0) throw ConfigError("queue_cap must be >= 1", cfg.line_of("queue_cap"));
  return o;
}

Scenario make_scenario(const Point& p, const SimOptions& o, std::size_t index) {
  return Scenario{.channel = p.channel(),
                  .point = p.operating_point(),
                  .policy = p.policy(),
                  .kind = o.kind,
                  .slots = o.slots,
                  .warmup_slots = o.warmup,
                  .seed = derive_seed(o.seed, index),
                  .queue_cap = o.queue_cap};
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Exceptions are
// rethrown in index order after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) guarded(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) guarded(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

template <typename F>
std::optional<double> try_eval(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Closed forms at a stable point; empty when the point is stable only by
// rounding and a denominator cancels.
std::optional<analytics::DelayReport> evaluate_if_stable(const Point& p) {
  const auto ch = p.channel();
  const auto pol = p.policy();
  const auto pt = p.operating_point();
  if (!analytics::is_stable(ch, pol, pt).stable) return std::nullopt;
  try {
    return analytics::evaluate(ch, pol, pt);
  } catch (const UnstableError&) {
    return std::nullopt;
  }
}

double rel_err(double reference, double value) {
  return reference == 0.0 ? std::abs(value) : std::abs(value - reference) / std::abs(reference);
}

// Stable and at least `fraction` of each boundary value away from it.
bool well_inside(const Point& p, double fraction) {
  const auto ch = p.channel();
  const auto pol = p.policy();
  const auto verdict = analytics::is_stable(ch, pol, p.operating_point());
  if (!verdict.stable) return false;
  const double max_p = analytics::max_arrival_primary(ch, pol);
  const double max_s = analytics::max_arrival_secondary(ch, pol, p.lambda_p);
  return verdict.margin_p >= fraction * max_p && verdict.margin_s >= fraction * max_s;
}

}  // namespace

void check_known_keys(const KeyValueConfig& cfg) {
  for (const auto& k : cfg.keys()) {
    if (!known_keys().contains(k)) throw ConfigError("unknown key `" + k + "`", cfg.line_of(k));
  }
}

int cmd_region(const KeyValueConfig& cfg, std::ostream& out) {
  const auto sweep = read_sweep(cfg, {"p_q", "p_a"});
  csv::Writer w(out, {"policy_id", "p_q", "p_a", "lambda_p", "max_lambda_p", "max_lambda_s"});

  if (sweep) {
    for (const auto& p : expand_points(cfg, sweep)) {
      const auto ch = p.channel();
      const auto pol = p.policy();
      auto max_p = try_eval([&] { return analytics::max_arrival_primary(ch, pol); });
      auto max_s = try_eval([&] { return analytics::max_arrival_secondary(ch, pol, p.lambda_p); });
      w.row({std::to_string(p.series), number(p.p_q), number(p.p_a), number(p.lambda_p), number(max_p),
             number(max_s)});
    }
    return kExitOk;
  }

  // Boundary trace: lambda_p from 0 to each policy's limit.
  KeyValueConfig scalar = cfg;
  scalar.set("lambda_p", 0.0);
  scalar.set("lambda_s", 0.0);
  const auto steps = static_cast<std::size_t>(u64_or(cfg, "sweep_steps", 21));
  if (steps < 2) throw ConfigError("sweep_steps must be >= 2", cfg.line_of("sweep_steps"));
  const auto points = expand_points(scalar, std::nullopt);
  for (const auto& p : points) {
    const auto ch = p.channel();
    const auto pol = p.policy();
    auto max_p = try_eval([&] { return analytics::max_arrival_primary(ch, pol); });
    if (!max_p) continue;
    for (std::size_t i = 0; i < steps; ++i) {
      const double lp = *max_p * static_cast<double>(i) / static_cast<double>(steps - 1);
      auto max_s = try_eval([&] { return analytics::max_arrival_secondary(ch, pol, lp); });
      w.row({std::to_string(p.series), number(p.p_q), number(p.p_a), number(lp), number(*max_p),
             number(max_s)});
    }
  }
  const auto ch = points.front().channel();
  const double overheard = ch.f_ps() * (1.0 - ch.f_pd());
  const double root = ch.f_sd() * (ch.f_pd() + overheard) / (ch.f_sd() + overheard);
  for (std::size_t i = 0; i < steps; ++i) {
    const double lp = root * static_cast<double>(i) / static_cast<double>(steps - 1);
    w.row({"union", "", "", number(lp), number(root), number(analytics::union_region_max_lambda_s(ch, lp))});
  }
  return kExitOk;
}

int cmd_delay(const KeyValueConfig& cfg, std::ostream& out) {
  const auto sweep = read_sweep(cfg, {"lambda", "lambda_p", "lambda_s", "p_q", "p_a", "f_pd"});
  csv::Writer w(out, concat(point_header(), {"status", "margin_p", "margin_s", "n_p", "n_sp", "n_s", "d_p",
                                             "d_s", "g00", "p_primary_empty", "epsilon"}));
  const auto points = expand_points(cfg, sweep);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const auto ch = p.channel();
    const auto pol = p.policy();
    const auto pt = p.operating_point();
    const auto verdict = analytics::is_stable(ch, pol, pt);
    auto row = point_fields(i, p);
    const auto r = evaluate_if_stable(p);
    row.push_back(r ? "stable" : "unstable");
    row.push_back(number(verdict.margin_p));
    row.push_back(number(verdict.margin_s));
    if (r) {
      for (auto v : {r->n_p, r->n_sp, r->n_s}) row.push_back(number(v));
      row.push_back(number(r->d_p));
      row.push_back(number(r->d_s));
      row.push_back(number(r->g00));
      row.push_back(number(analytics::prob_primary_empty(ch, pol, pt)));
      row.push_back(number(r->epsilon));
    } else {
      row.resize(w.columns());
    }
    w.row(row);
  }
  return kExitOk;
}

int cmd_simulate(const KeyValueConfig& cfg, std::ostream& out) {
  const auto sweep = read_sweep(cfg, {"lambda", "lambda_p", "lambda_s", "p_q", "p_a", "f_pd"});
  const auto opts = read_sim_options(cfg);
  const auto points = expand_points(cfg, sweep);

  struct Result {
    std::optional<SimStats> stats;
  };
  std::vector<Result> results(points.size());
  parallel_for(points.size(), opts.threads, [&](std::size_t i) {
    try {
      results[i].stats = replicate(make_scenario(points[i], opts, i), opts.replications, 1);
    } catch (const RunAborted&) {
      results[i].stats.reset();
    }
  });

  csv::Writer w(out, concat(point_header(),
                            {"policy", "seed", "slots", "warmup", "replications", "status", "throughput_p",
                             "throughput_s", "mean_delay_p", "mean_delay_s", "ci_delay_p", "ci_delay_s",
                             "mean_len_p", "mean_len_sp", "mean_len_s", "frac_both_empty",
                             "frac_primary_empty", "arrivals_p", "arrivals_s", "delivered_p", "delivered_s",
                             "relayed", "wasted_slots"}));
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = point_fields(i, points[i]);
    row.push_back(std::string(to_string(opts.kind)));
    row.push_back(std::to_string(derive_seed(opts.seed, i)));
    row.push_back(std::to_string(opts.slots));
    row.push_back(std::to_string(opts.warmup));
    row.push_back(std::to_string(opts.replications));
    if (const auto& s = results[i].stats) {
      row.push_back("ok");
      for (double v : {s->throughput_p, s->throughput_s, s->mean_delay_p, s->mean_delay_s, s->ci_halfwidth_delay_p,
                       s->ci_halfwidth_delay_s, s->mean_len_p, s->mean_len_sp, s->mean_len_s, s->frac_both_empty,
                       s->frac_primary_empty}) {
        row.push_back(number(v));
      }
      for (auto c : {s->arrivals_p, s->arrivals_s, s->delivered_p, s->delivered_s, s->relayed_count,
                     s->wasted_slots}) {
        row.push_back(std::to_string(c));
      }
    } else {
      row.push_back("aborted");
      row.resize(w.columns());
    }
    w.row(row);
  }
  return kExitOk;
}

int cmd_validate(const KeyValueConfig& cfg, std::ostream& out) {
  const auto sweep = read_sweep(cfg, {"lambda", "lambda_p", "lambda_s", "p_q", "p_a", "f_pd"});
  auto opts = read_sim_options(cfg);
  if (opts.kind != PolicyKind::randomized) {
    throw ConfigError("validate compares against the randomized policy only", cfg.line_of("policy"));
  }
  const double tolerance = double_or(cfg, "tolerance", 0.03);
  const double margin = double_or(cfg, "margin", 0.10);
  const auto points = expand_points(cfg, sweep);

  std::vector<std::optional<SimStats>> sims(points.size());
  std::vector<bool> stable(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    stable[i] = evaluate_if_stable(points[i]).has_value();
  }
  parallel_for(points.size(), opts.threads, [&](std::size_t i) {
    if (stable[i]) sims[i] = replicate(make_scenario(points[i], opts, i), opts.replications, 1);
  });

  csv::Writer w(out, concat(point_header(),
                            {"status", "checked", "d_p_analytic", "d_p_sim", "d_p_relerr", "d_s_analytic",
                             "d_s_sim", "d_s_relerr", "n_p_analytic", "n_p_sim", "n_sp_analytic", "n_sp_sim",
                             "n_s_analytic", "n_s_sim", "g00_analytic", "g00_sim", "g00_abserr",
                             "p_empty_analytic", "p_empty_sim", "p_empty_abserr", "pass"}));
  bool all_pass = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    auto row = point_fields(i, p);
    if (!stable[i]) {
      row.push_back("unstable");
      row.push_back("no");
      row.resize(w.columns());
      w.row(row);
      continue;
    }
    const auto ch = p.channel();
    const auto pol = p.policy();
    const auto pt = p.operating_point();
    const auto a = analytics::evaluate(ch, pol, pt);
    const double p_empty = analytics::prob_primary_empty(ch, pol, pt);
    const auto& s = *sims[i];
    const bool checked = well_inside(p, margin);

    std::optional<double> dp_err, ds_err;
    if (a.d_p) dp_err = rel_err(*a.d_p, s.mean_delay_p);
    if (a.d_s) ds_err = rel_err(*a.d_s, s.mean_delay_s);
    bool pass = true;
    for (const auto& e : {dp_err, ds_err}) {
      if (e && !(*e <= tolerance)) pass = false;
    }
    if (checked && !pass) all_pass = false;

    row.push_back("stable");
    row.push_back(yes_no(checked));
    row.push_back(number(a.d_p));
    row.push_back(a.d_p ? number(s.mean_delay_p) : "");
    row.push_back(number(dp_err));
    row.push_back(number(a.d_s));
    row.push_back(a.d_s ? number(s.mean_delay_s) : "");
    row.push_back(number(ds_err));
    for (double v : {a.n_p, s.mean_len_p, a.n_sp, s.mean_len_sp, a.n_s, s.mean_len_s, a.g00, s.frac_both_empty,
                     std::abs(a.g00 - s.frac_both_empty), p_empty, s.frac_primary_empty,
                     std::abs(p_empty - s.frac_primary_empty)}) {
      row.push_back(number(v));
    }
    row.push_back(checked ? yes_no(pass) : "");
    w.row(row);
  }
  return all_pass ? kExitOk : kExitValidationFailure;
}

int cmd_optimize(const KeyValueConfig& cfg, std::ostream& out) {
  const auto sweep = read_sweep(cfg, {"lambda", "lambda_p", "lambda_s", "f_pd"});
  const auto points = expand_points(cfg, sweep);

  struct Row {
    std::optional<optimizer::PrimaryDelayDecision> pu;
    std::optional<optimizer::SecondaryDelayDecision> su;
    std::string su_status;
    std::optional<double> no_coop;
  };
  auto solve = [](const Point& p) {
    Row r;
    const auto ch = p.channel();
    const auto pt = p.operating_point();
    if (p.lambda_p > 0.0) r.pu = optimizer::minimize_primary_delay(ch, pt);
    if (p.lambda_s == 0.0) {
      r.su_status = "undefined";
    } else {
      try {
        r.su = optimizer::minimize_secondary_delay(ch, pt);
        r.su_status = "ok";
      } catch (const InfeasibleError&) {
        r.su_status = "infeasible";
      }
    }
    r.no_coop = try_eval([&] { return optimizer::no_cooperation_delay(ch, p.lambda_p); });
    if (p.lambda_p == 0.0) r.no_coop.reset();
    return r;
  };

  if (!sweep && points.size() == 1) {
    const auto& p = points.front();
    const Row r = solve(p);
    KeyValueConfig report;
    write_channel(report, p.channel());
    write_point(report, p.operating_point());
    if (r.pu) {
      report.set("pu.threshold", r.pu->threshold);
      if (r.pu->pq_lower) report.set("pu.pq_lower", *r.pu->pq_lower);
      if (r.pu->pq_upper) report.set("pu.pq_upper", *r.pu->pq_upper);
      report.set("pu.mode", std::string(optimizer::to_string(r.pu->mode)));
      if (r.pu->p_q_star) report.set("pu.p_q", *r.pu->p_q_star);
      if (r.pu->p_a_star) report.set("pu.p_a", *r.pu->p_a_star);
      if (r.pu->d_p_star) report.set("pu.d_p", *r.pu->d_p_star);
      report.set("pu.near_boundary", yes_no(r.pu->near_boundary));
    } else {
      report.set("pu.mode", std::string("undefined"));
    }
    if (r.no_coop) report.set("no_cooperation.d_p", *r.no_coop);
    report.set("su.status", r.su_status);
    if (r.su) {
      report.set("su.pq_lower", r.su->pq_lower);
      report.set("su.pq_upper", r.su->pq_upper);
      report.set("su.p_q", r.su->p_q_star);
      report.set("su.p_a", r.su->p_a_star);
      report.set("su.d_s", r.su->d_s_star);
      report.set("su.near_boundary", yes_no(r.su->near_boundary));
    }
    out << report.to_text();
    return kExitOk;
  }

  csv::Writer w(out, {"point", "f_pd", "f_sd", "f_ps", "lambda_p", "lambda_s", "threshold", "pq_lower",
                      "pq_upper", "pu_mode", "pu_p_q", "pu_p_a", "pu_d_p", "pu_near_boundary", "no_coop_d_p",
                      "su_status", "su_p_q", "su_p_a", "su_d_s", "su_near_boundary"});
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const Row r = solve(p);
    std::vector<std::string> row{std::to_string(i), number(p.f_pd), number(p.f_sd), number(p.f_ps),
                                 number(p.lambda_p), number(p.lambda_s),
                                 number(analytics::phase_transition_pq(p.channel()))};
    if (r.pu) {
      row.push_back(number(r.pu->pq_lower));
      row.push_back(number(r.pu->pq_upper));
      row.push_back(std::string(optimizer::to_string(r.pu->mode)));
      row.push_back(number(r.pu->p_q_star));
      row.push_back(number(r.pu->p_a_star));
      row.push_back(number(r.pu->d_p_star));
      row.push_back(yes_no(r.pu->near_boundary));
    } else {
      row.insert(row.end(), {"", "", "undefined", "", "", "", ""});
    }
    row.push_back(number(r.no_coop));
    row.push_back(r.su_status);
    if (r.su) {
      row.push_back(number(r.su->p_q_star));
      row.push_back(number(r.su->p_a_star));
      row.push_back(number(r.su->d_s_star));
      row.push_back(yes_no(r.su->near_boundary));
    } else {
      row.insert(row.end(), {"", "", "", ""});
    }
    w.row(row);
  }
  return kExitOk;
}

int cmd_oracle(const KeyValueConfig& cfg, std::ostream& out) {
  const auto sweep = read_sweep(cfg, {"lambda", "lambda_p", "lambda_s", "p_q", "p_a", "f_pd"});
  const auto points = expand_points(cfg, sweep);
  const double tolerance = double_or(cfg, "tolerance", 0.005);
  const auto truncation = static_cast<std::size_t>(u64_or(cfg, "truncation", 400));
  const double residual = double_or(cfg, "residual_tolerance", 1e-12);
  const auto max_iterations = static_cast<std::size_t>(u64_or(cfg, "max_iterations", 200'000));
  const double max_boundary = double_or(cfg, "max_boundary_mass", 1e-6);
  const auto threads = static_cast<unsigned>(u64_or(cfg, "threads", 0));

  std::vector<oracle::ChainPair> pairs{oracle::ChainPair::primary_secondary, oracle::ChainPair::primary_relay};
  if (auto p = cfg.get_string("pair"); p && *p != "both") {
    try {
      pairs = {oracle::parse_chain_pair(*p)};
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what(), cfg.line_of("pair"));
    }
  }
  if (truncation < 4) throw ConfigError("truncation must be >= 4", cfg.line_of("truncation"));
  if (!(residual > 0.0)) throw ConfigError("residual_tolerance must be > 0", cfg.line_of("residual_tolerance"));

  struct Job {
    std::size_t point;
    oracle::ChainPair pair;
    std::string status;
    std::optional<oracle::StationarySolution> sol;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (auto pr : pairs) jobs.push_back({i, pr, "", std::nullopt});
  }
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    auto& job = jobs[j];
    const auto& p = points[job.point];
    if (!evaluate_if_stable(p)) {
      job.status = "unstable";
      return;
    }
    oracle::ChainSpec spec{.channel = p.channel(),
                           .policy = p.policy(),
                           .point = p.operating_point(),
                           .pair = job.pair,
                           .truncation = truncation,
                           .tolerance = residual,
                           .max_iterations = max_iterations,
                           .max_boundary_mass = max_boundary};
    try {
      job.sol = oracle::solve_stationary(spec);
      job.status = "ok";
    } catch (const TruncationError&) {
      job.status = "truncation_error";
    } catch (const NonConvergenceError&) {
      job.status = "no_convergence";
    }
  });

  csv::Writer w(out, concat(point_header(),
                            {"pair", "truncation", "status", "iterations", "residual", "mass_at_boundary",
                             "mean_first", "mean_second", "p00", "p_first_empty", "analytic_first",
                             "analytic_second", "analytic_p00", "analytic_p_first_empty", "relerr_first",
                             "relerr_second", "abserr_p00", "abserr_p_first_empty", "pass"}));
  bool all_pass = true;
  for (const auto& job : jobs) {
    const auto& p = points[job.point];
    auto row = point_fields(job.point, p);
    row.push_back(std::string(oracle::to_string(job.pair)));
    row.push_back(std::to_string(truncation));
    row.push_back(job.status);
    if (!job.sol) {
      if (job.status != "unstable") all_pass = false;
      row.resize(w.columns());
      w.row(row);
      continue;
    }
    const auto& s = *job.sol;
    const auto ch = p.channel();
    const auto pol = p.policy();
    const auto pt = p.operating_point();
    const bool relay = job.pair == oracle::ChainPair::primary_relay;
    const double a_first = analytics::mean_queue_primary(ch, pol, pt);
    const double a_second =
        relay ? analytics::mean_queue_relay(ch, pol, pt) : analytics::mean_queue_secondary(ch, pol, pt);
    const double a_empty = analytics::prob_primary_empty(ch, pol, pt);
    std::optional<double> a_p00;
    if (!relay) a_p00 = analytics::empty_joint_probability(ch, pol, pt);

    const double e_first = rel_err(a_first, s.mean_first);
    const double e_second = rel_err(a_second, s.mean_second);
    const double e_empty = std::abs(a_empty - s.p_first_empty);
    std::optional<double> e_p00;
    if (a_p00) e_p00 = std::abs(*a_p00 - s.p00);
    const bool pass = e_first <= tolerance && e_second <= tolerance && e_empty <= tolerance &&
                      (!e_p00 || *e_p00 <= tolerance);
    all_pass = all_pass && pass;

    row.push_back(std::to_string(s.iterations));
    for (double v : {s.residual, s.mass_at_boundary, s.mean_first, s.mean_second, s.p00, s.p_first_empty, a_first,
                     a_second}) {
      row.push_back(number(v));
    }
    row.push_back(number(a_p00));
    row.push_back(number(a_empty));
    row.push_back(number(e_first));
    row.push_back(number(e_second));
    row.push_back(number(e_p00));
    row.push_back(number(e_empty));
    row.push_back(yes_no(pass));
    w.row(row);
  }
  return all_pass ? kExitOk : kExitValidationFailure;
}

int cmd_tradeoff(const KeyValueConfig& cfg, std::ostream& out) {
  KeyValueConfig c = cfg;
  if (!c.has("sweep")) {
    c.set("sweep", std::string("p_a"));
    c.set("sweep_start", 0.0);
    c.set("sweep_stop", 1.0);
  }
  const auto sweep = read_sweep(c, {"p_a"});
  csv::Writer w(out, {"point", "p_q", "p_a", "lambda_p", "lambda_s", "status", "d_s", "d_p"});
  const auto points = expand_points(c, sweep);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    std::vector<std::string> row{std::to_string(i), number(p.p_q), number(p.p_a), number(p.lambda_p),
                                 number(p.lambda_s)};
    if (const auto r = evaluate_if_stable(p)) {
      row.push_back("stable");
      row.push_back(number(r->d_s));
      row.push_back(number(r->d_p));
    } else {
      row.insert(row.end(), {"unstable", "", ""});
    }
    w.row(row);
  }
  return kExitOk;
}

}  // namespace crq::cli

// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo experiment driver: boundary-surface sweeps over weights,
// comparison with two baseline allocations across SNR, and sweeps of the
// outage threshold under imperfect CSIT.
//
// All reported rates are per sub-channel (bits per channel use divided by L).
// Trials draw their channels from seeds derived from (master seed, trial), so
// every point and scheme of an experiment sees the same realizations and
// results do not depend on the thread count.

#ifndef PBCC_SIM_HPP
#define PBCC_SIM_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pbcc/allocator.hpp"
#include "pbcc/channel.hpp"
#include "pbcc/rates.hpp"
#include "pbcc/types.hpp"

namespace pbcc {

struct ExperimentConfig {
  std::size_t L = 64;
  double P = 64.0;
  std::vector<double> snr1_db{10.0};
  std::vector<double> snr2_db{10.0};
  double sigma = 0.0;
  std::vector<double> epsilon{0.05};
  std::vector<Weights> weight_grid{Weights{1.0, 1.0, 1.0}};
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool swap_users = false;  // exchange the users' channel draws
  SolverConfig solver;

  void validate() const {
    detail::require(L >= 1, "experiment config: L must be >= 1");
    detail::require(trials >= 1, "experiment config: trials must be >= 1");
    detail::require(std::isfinite(P) && P > 0.0, "experiment config: P must be > 0");
    detail::require(!snr1_db.empty() && !snr2_db.empty(), "experiment config: SNR lists must not be empty");
    detail::require(snr1_db.size() == snr2_db.size() || snr1_db.size() == 1 || snr2_db.size() == 1,
                    "experiment config: snr1_db and snr2_db must have equal length or length 1");
    for (double s : snr1_db) detail::require(std::isfinite(s), "experiment config: non-finite SNR");
    for (double s : snr2_db) detail::require(std::isfinite(s), "experiment config: non-finite SNR");
    detail::require(!epsilon.empty(), "experiment config: epsilon list must not be empty");
    for (double e : epsilon) EstimationModel{sigma, e}.validate();
    detail::require(!weight_grid.empty(), "experiment config: weight grid must not be empty");
    for (const auto& w : weight_grid) w.validate();
    detail::require(threads >= 1, "experiment config: threads must be >= 1");
    solver.validate();
  }

  [[nodiscard]] std::size_t snr_points() const { return std::max(snr1_db.size(), snr2_db.size()); }
  [[nodiscard]] double snr1_at(std::size_t k) const { return snr1_db[snr1_db.size() == 1 ? 0 : k]; }
  [[nodiscard]] double snr2_at(std::size_t k) const { return snr2_db[snr2_db.size() == 1 ? 0 : k]; }
};

enum class Scheme : std::uint8_t { optimal, uniform, common_split };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::optimal: return "optimal";
    case Scheme::uniform: return "uniform";
    case Scheme::common_split: return "common_split";
  }
  return "?";
}

/// One configuration point of an experiment.
struct PointSpec {
  double snr1_db = 10.0;
  double snr2_db = 10.0;
  double sigma = 0.0;
  double epsilon = 0.05;
  Weights weights;
};

struct TrialRecord {
  std::size_t point = 0;
  Scheme scheme = Scheme::optimal;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  PowerAllocation allocation;
  RateTriple rates;  // per sub-channel, from the transmitter's gain bounds
  double objective = 0.0;
  RateTriple realized;  // per sub-channel, on the true channel
  int step = 0;         // allocator selection step, 0 for baselines
  BranchCounts counts;
};

struct Summary {
  double mean = 0.0;
  double half_width = std::numeric_limits<double>::quiet_NaN();  // 95% normal interval
};

struct ResultRow {
  std::size_t point = 0;
  PointSpec spec;
  Scheme scheme = Scheme::optimal;
  std::size_t trials = 0;
  PerUser<Summary> confidential;
  Summary common;
  Summary objective;
  RateTriple realized;
  std::array<std::size_t, 4> steps{};  // how often each selection step fired
  BranchCounts counts;                 // summed over trials
};

struct ExperimentResult {
  std::string experiment;
  ExperimentConfig config;
  std::vector<PointSpec> points;
  std::vector<Scheme> schemes;
  std::vector<ResultRow> rows;  // point-major, scheme-minor
  std::vector<TrialRecord> records;
  bool has_realized = false;

  [[nodiscard]] const ResultRow& row(std::size_t point, Scheme s) const {
    for (const auto& r : rows)
      if (r.point == point && r.scheme == s) return r;
    throw InvalidArgument("experiment result: no row for the requested point and scheme");
  }
};

/// splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return mix_seed(mix_seed(master) ^ static_cast<std::uint64_t>(trial));
}

/// Equal split P / (3L) to every message on every sub-channel; confidential
/// power outside its owner's set is dropped, not reassigned.
inline PowerAllocation baseline_uniform(const GainBounds& bounds, const Partition& part, double budget) {
  detail::require(part.size() == bounds.size(), "uniform baseline: partition length mismatch");
  detail::require(std::isfinite(budget) && budget >= 0.0, "uniform baseline: budget must be >= 0");
  const std::size_t n = bounds.size();
  const double share = budget / (3.0 * static_cast<double>(n));
  PowerAllocation p = PowerAllocation::zeros(n, budget);
  for (std::size_t l = 0; l < n; ++l) {
    p.common[l] = share;
    if (part.in(Advantage::user1, l)) p.confidential[0][l] = share;
    if (part.in(Advantage::user2, l)) p.confidential[1][l] = share;
  }
  return p;
}

/// Confidential-only water-filling of `budget` over S1 and S2: every set
/// member gets the root of its weighted secrecy marginal at a common price.
inline PowerAllocation secrecy_waterfill(const GainBounds& bounds, const Partition& part, const Weights& w,
                                         double budget, const SolverConfig& cfg = {}) {
  detail::check_problem(bounds, part, w);
  const std::size_t n = bounds.size();
  auto fill = [&](double lambda) {
    PowerAllocation p = PowerAllocation::zeros(n, budget);
    for (std::size_t l = 0; l < n; ++l)
      for (User u : {User::one, User::two})
        if (part.in(advantage_of(u), l))
          p.confidential[index(u)][l] = numeric::positive_part(detail::term_inputs(bounds, w, lambda, 1.0, u, l).beta());
    return p;
  };
  if (budget == 0.0 || (part.members(Advantage::user1).empty() && part.members(Advantage::user2).empty()))
    return PowerAllocation::zeros(n, budget);

  double hi = detail::lambda_ceiling(bounds, w);
  double lo = hi;
  int iters = 0;
  while (fill(lo).total() < budget) {
    lo *= 0.5;
    if (++iters > 2000) throw SolverError("secrecy water-filling: no lower bracket");
  }
  for (int k = 0; k < cfg.max_iters + 200; ++k) {
    const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double t = fill(mid).total();
    if (std::abs(t - budget) <= cfg.lambda_tol * budget) return fill(mid);
    (t > budget ? lo : hi) = mid;
  }
  return fill(hi);
}

/// P/3 common power spread evenly; the remaining 2P/3 goes to the
/// confidential messages by secrecy water-filling.
inline PowerAllocation baseline_common_split(const GainBounds& bounds, const Partition& part, const Weights& w,
                                             double budget, const SolverConfig& cfg = {}) {
  detail::require(std::isfinite(budget) && budget >= 0.0, "common-split baseline: budget must be >= 0");
  PowerAllocation p = secrecy_waterfill(bounds, part, w, 2.0 * budget / 3.0, cfg);
  const double share = budget / (3.0 * static_cast<double>(bounds.size()));
  for (double& x : p.common) x = share;
  p.budget = budget;
  return p;
}

/// Rates actually delivered on the true channel gains: the common rate is
/// limited by the weaker true channel and negative secrecy terms count as 0.
inline RateTriple realized_rates(const PerUser<std::vector<double>>& gains, const Partition& part,
                                 const PowerAllocation& p) {
  RateTriple r;
  PerUser<double> common{0.0, 0.0};
  for (std::size_t l = 0; l < p.size(); ++l) {
    const double noise = p.confidential[0][l] + p.confidential[1][l];
    for (std::size_t u = 0; u < 2; ++u)
      common[u] += detail::half_log2_gap(gains[u][l], p.common[l] + noise, noise);
    for (User u : {User::one, User::two}) {
      if (!part.in(advantage_of(u), l)) continue;
      const double x = p.conf(u, l);
      r.confidential[index(u)] +=
          numeric::positive_part(detail::half_log2_gap(gains[index(u)][l], x, 0.0) -
                                 detail::half_log2_gap(gains[index(other(u))][l], x, 0.0));
    }
  }
  r.common = std::min(common[0], common[1]);
  return r;
}

namespace detail {

inline RateTriple per_subchannel(RateTriple r, std::size_t n) {
  const double k = 1.0 / static_cast<double>(n);
  return RateTriple{r.common * k, {r.confidential[0] * k, r.confidential[1] * k}};
}

inline Summary summarize(const std::vector<double>& xs) {
  Summary s;
  const auto n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.half_width = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

struct ChannelDraw {
  ChannelRealization realization;
  GainBounds bounds;
  Partition partition;
};

inline ChannelDraw draw_channel(const ExperimentConfig& cfg, const PointSpec& pt, std::uint64_t seed) {
  const PerUser<ChannelPrior> prior{ChannelPrior::uniform(cfg.L, pt.snr1_db), ChannelPrior::uniform(cfg.L, pt.snr2_db)};
  const EstimationModel model{pt.sigma, pt.epsilon};
  ChannelDraw d;
  d.realization = sample_realization(prior, model, seed);
  if (cfg.swap_users) {
    std::swap(d.realization.h[0], d.realization.h[1]);
    std::swap(d.realization.h_hat[0], d.realization.h_hat[1]);
  }
  const PerUser<ChannelPrior> used = cfg.swap_users ? PerUser<ChannelPrior>{prior[1], prior[0]} : prior;
  d.bounds = gain_bounds(used, model, d.realization.h_hat);
  d.partition = partition(d.bounds);
  return d;
}

inline bool same_channel(const PointSpec& a, const PointSpec& b) {
  return a.snr1_db == b.snr1_db && a.snr2_db == b.snr2_db && a.sigma == b.sigma && a.epsilon == b.epsilon;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Runs every scheme at every point for every trial and averages.
inline ExperimentResult run_experiment(std::string name, const ExperimentConfig& cfg, std::vector<PointSpec> points,
                                       std::vector<Scheme> schemes, bool realized) {
  cfg.validate();
  ExperimentResult res;
  res.experiment = std::move(name);
  res.config = cfg;
  res.points = std::move(points);
  res.schemes = std::move(schemes);
  res.has_realized = realized;
  const std::size_t per_trial = res.points.size() * res.schemes.size();
  std::vector<std::vector<TrialRecord>> slots(cfg.trials);

  detail::parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const std::uint64_t seed = trial_seed(cfg.seed, t);
    std::vector<TrialRecord>& out = slots[t];
    out.reserve(per_trial);
    std::optional<detail::ChannelDraw> draw;
    for (std::size_t k = 0; k < res.points.size(); ++k) {
      const PointSpec& pt = res.points[k];
      if (!draw || k == 0 || !detail::same_channel(pt, res.points[k - 1])) draw = detail::draw_channel(cfg, pt, seed);
      for (Scheme s : res.schemes) {
        TrialRecord rec;
        rec.point = k;
        rec.scheme = s;
        rec.trial = t;
        rec.seed = seed;
        switch (s) {
          case Scheme::optimal: {
            AllocationResult a = allocate(draw->bounds, draw->partition, pt.weights, cfg.P, cfg.solver);
            rec.allocation = std::move(a.allocation);
            rec.step = a.diagnostics.step;
            rec.counts = a.diagnostics.counts;
            break;
          }
          case Scheme::uniform: rec.allocation = baseline_uniform(draw->bounds, draw->partition, cfg.P); break;
          case Scheme::common_split:
            rec.allocation = baseline_common_split(draw->bounds, draw->partition, pt.weights, cfg.P, cfg.solver);
            break;
        }
        rec.rates = detail::per_subchannel(rate_triple(draw->bounds, draw->partition, rec.allocation), cfg.L);
        rec.objective = weighted_sum(pt.weights, rec.rates);
        if (realized)
          rec.realized = detail::per_subchannel(
              realized_rates(draw->realization.true_gains(), draw->partition, rec.allocation), cfg.L);
        out.push_back(std::move(rec));
      }
    }
  });

  // Fixed-order reduction over trials.
  for (std::size_t k = 0; k < res.points.size(); ++k) {
    for (std::size_t si = 0; si < res.schemes.size(); ++si) {
      std::vector<double> r0, r1, r2, obj;
      ResultRow row;
      row.point = k;
      row.spec = res.points[k];
      row.scheme = res.schemes[si];
      row.trials = cfg.trials;
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const TrialRecord& rec = slots[t][k * res.schemes.size() + si];
        r0.push_back(rec.rates.common);
        r1.push_back(rec.rates.confidential[0]);
        r2.push_back(rec.rates.confidential[1]);
        obj.push_back(rec.objective);
        row.realized.common += rec.realized.common;
        row.realized.confidential[0] += rec.realized.confidential[0];
        row.realized.confidential[1] += rec.realized.confidential[1];
        ++row.steps[static_cast<std::size_t>(rec.step)];
        row.counts.follower_fallbacks += rec.counts.follower_fallbacks;
        row.counts.nu_disagreements += rec.counts.nu_disagreements;
        row.counts.zero_band += rec.counts.zero_band;
      }
      row.common = detail::summarize(r0);
      row.confidential = {detail::summarize(r1), detail::summarize(r2)};
      row.objective = detail::summarize(obj);
      row.realized = detail::per_subchannel(row.realized, cfg.trials);
      res.rows.push_back(row);
    }
  }
  for (auto& s : slots)
    for (auto& rec : s) res.records.push_back(std::move(rec));
  return res;
}

/// Optimal allocation at every weight of the grid, first SNR pair and epsilon.
inline ExperimentResult region_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<PointSpec> pts;
  for (const auto& w : cfg.weight_grid) pts.push_back({cfg.snr1_at(0), cfg.snr2_at(0), cfg.sigma, cfg.epsilon[0], w});
  return run_experiment("region", cfg, std::move(pts), {Scheme::optimal}, false);
}

/// Optimal versus both baselines at every SNR pair, first weight and epsilon.
inline ExperimentResult compare_baselines(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<PointSpec> pts;
  for (std::size_t k = 0; k < cfg.snr_points(); ++k)
    pts.push_back({cfg.snr1_at(k), cfg.snr2_at(k), cfg.sigma, cfg.epsilon[0], cfg.weight_grid[0]});
  return run_experiment("compare", cfg, std::move(pts), {Scheme::optimal, Scheme::uniform, Scheme::common_split},
                        false);
}

/// Optimal allocation at every epsilon, first SNR pair and weight. Rates are
/// the guaranteed ones; realized rates on the true channel are kept alongside.
inline ExperimentResult csit_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<PointSpec> pts;
  for (double e : cfg.epsilon) pts.push_back({cfg.snr1_at(0), cfg.snr2_at(0), cfg.sigma, e, cfg.weight_grid[0]});
  return run_experiment("csit", cfg, std::move(pts), {Scheme::optimal}, true);
}

/// Point of a constant-E[R0] slice of the averaged boundary surface, found
/// along the ray of weights (w0, w1, w2) with (w1, w2) fixed.
struct ContourPoint {
  double target = 0.0;
  Weights weights;
  ResultRow row;
  bool converged = false;
};

/// Bisection on log w0 until the averaged common rate meets `target` within
/// `tol`. The same trials are used at every w0, so the averaged common rate is
/// nondecreasing along the ray.
inline ContourPoint contour_point(const ExperimentConfig& cfg, double target, double w1, double w2,
                                  double tol = 1e-3, double w0_lo = 1e-3, double w0_hi = 1e3, int max_steps = 40) {
  detail::require(w0_lo > 0.0 && w0_hi > w0_lo, "contour: invalid w0 bracket");
  ExperimentConfig c = cfg;
  auto eval = [&](double w0) {
    c.weight_grid = {Weights{w0, w1, w2}};
    return region_sweep(c).rows.front();
  };
  ContourPoint out;
  out.target = target;
  ResultRow lo_row = eval(w0_lo);
  ResultRow hi_row = eval(w0_hi);
  double lo = w0_lo;
  double hi = w0_hi;
  auto finish = [&](double w0, const ResultRow& row, bool ok) {
    out.weights = Weights{w0, w1, w2};
    out.row = row;
    out.converged = ok;
    return out;
  };
  if (lo_row.common.mean >= target) return finish(lo, lo_row, std::abs(lo_row.common.mean - target) <= tol);
  if (hi_row.common.mean <= target) return finish(hi, hi_row, std::abs(hi_row.common.mean - target) <= tol);
  for (int k = 0; k < max_steps; ++k) {
    const double mid = std::sqrt(lo * hi);
    ResultRow m = eval(mid);
    if (std::abs(m.common.mean - target) <= tol) return finish(mid, m, true);
    if (m.common.mean < target) {
      lo = mid;
      lo_row = std::move(m);
    } else {
      hi = mid;
      hi_row = std::move(m);
    }
  }
  const bool take_lo = std::abs(lo_row.common.mean - target) <= std::abs(hi_row.common.mean - target);
  return take_lo ? finish(lo, lo_row, false) : finish(hi, hi_row, false);
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string fmt12(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace detail

inline nlohmann::json to_json(const Weights& w) {
  return nlohmann::json::array({w.common, w.confidential[0], w.confidential[1]});
}

inline nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& w : cfg.weight_grid) grid.push_back(to_json(w));
  return {{"L", cfg.L},
          {"P", cfg.P},
          {"snr1_db", cfg.snr1_db},
          {"snr2_db", cfg.snr2_db},
          {"sigma", cfg.sigma},
          {"epsilon", cfg.epsilon},
          {"weight_grid", grid},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"threads", cfg.threads},
          {"swap_users", cfg.swap_users},
          {"solver",
           {{"lambda_tol", cfg.solver.lambda_tol},
            {"mu_tol", cfg.solver.mu_tol},
            {"max_iters", cfg.solver.max_iters},
            {"follower_threshold",
             cfg.solver.follower_threshold == FollowerThreshold::theorem ? "theorem" : "appendix"}}}};
}

inline const char* csv_header() {
  return "experiment,point,scheme,snr1_db,snr2_db,sigma,epsilon,w0,w1,w2,trials,"
         "R0,R1,R2,objective,R0_hw,R1_hw,R2_hw,objective_hw,R0_realized,R1_realized,R2_realized";
}

/// One header row and one row per (point, scheme); '#' lines carry the
/// resolved configuration. Empty cells mark undefined values.
inline void write_csv(std::ostream& os, const ExperimentResult& res) {
  os << "# pbcc experiment=" << res.experiment << "\n";
  os << "# config=" << to_json(res.config).dump() << "\n";
  os << csv_header() << "\n";
  using detail::fmt12;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : res.rows) {
    const auto& s = r.spec;
    os << res.experiment << ',' << r.point << ',' << to_string(r.scheme) << ',' << fmt12(s.snr1_db) << ','
       << fmt12(s.snr2_db) << ',' << fmt12(s.sigma) << ',' << fmt12(s.epsilon) << ',' << fmt12(s.weights.common)
       << ',' << fmt12(s.weights.confidential[0]) << ',' << fmt12(s.weights.confidential[1]) << ',' << r.trials
       << ',' << fmt12(r.common.mean) << ',' << fmt12(r.confidential[0].mean) << ','
       << fmt12(r.confidential[1].mean) << ',' << fmt12(r.objective.mean) << ',' << fmt12(r.common.half_width)
       << ',' << fmt12(r.confidential[0].half_width) << ',' << fmt12(r.confidential[1].half_width) << ','
       << fmt12(r.objective.half_width) << ',' << fmt12(res.has_realized ? r.realized.common : nan) << ','
       << fmt12(res.has_realized ? r.realized.confidential[0] : nan) << ','
       << fmt12(res.has_realized ? r.realized.confidential[1] : nan) << "\n";
  }
}

inline nlohmann::json to_json(const ExperimentResult& res) {
  auto num = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : res.rows) {
    rows.push_back({{"point", r.point},
                    {"scheme", to_string(r.scheme)},
                    {"snr1_db", r.spec.snr1_db},
                    {"snr2_db", r.spec.snr2_db},
                    {"sigma", r.spec.sigma},
                    {"epsilon", r.spec.epsilon},
                    {"weights", to_json(r.spec.weights)},
                    {"trials", r.trials},
                    {"mean", {r.common.mean, r.confidential[0].mean, r.confidential[1].mean}},
                    {"half_width", {num(r.common.half_width), num(r.confidential[0].half_width),
                                    num(r.confidential[1].half_width)}},
                    {"objective", r.objective.mean},
                    {"objective_half_width", num(r.objective.half_width)},
                    {"diagnostics",
                     {{"selection_steps", {r.steps[1], r.steps[2], r.steps[3]}},
                      {"follower_fallbacks", r.counts.follower_fallbacks},
                      {"nu_disagreements", r.counts.nu_disagreements},
                      {"zero_band", r.counts.zero_band}}}});
    if (res.has_realized)
      rows.back()["realized"] = {r.realized.common, r.realized.confidential[0], r.realized.confidential[1]};
  }
  std::vector<std::uint64_t> seeds;
  for (std::size_t t = 0; t < res.config.trials; ++t) seeds.push_back(trial_seed(res.config.seed, t));
  return {{"experiment", res.experiment},
          {"rate_unit", "bits per channel use per sub-channel"},
          {"config", to_json(res.config)},
          {"trial_seeds", seeds},
          {"rows", rows}};
}

}  // namespace pbcc

#endif  // PBCC_SIM_HPP

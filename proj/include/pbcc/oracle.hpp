// SPDX-License-Identifier: Apache-2.0
//
// Independent checks for the closed-form allocator: an exhaustive grid search
// of the weighted sum rate and first-order (KKT) residuals of the
// per-sub-channel Lagrangian. Nothing here calls into the allocator's
// closed forms; the KKT marginals are re-implemented from their definitions.

#ifndef PBCC_ORACLE_HPP
#define PBCC_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "pbcc/allocator.hpp"
#include "pbcc/channel.hpp"
#include "pbcc/numeric.hpp"
#include "pbcc/rates.hpp"
#include "pbcc/types.hpp"

namespace pbcc {

/// Non-finite `upper` / `coarse_step` mean "derive from the budget"
/// (upper = P, coarse step = P / 20).
struct GridSpec {
  double upper = std::numeric_limits<double>::quiet_NaN();
  double coarse_step = std::numeric_limits<double>::quiet_NaN();
  int levels = 3;
  int box_steps = 2;  // refinement box half-width, in steps of the previous level
  int refine_factor = 10;

  void validate() const {
    detail::require(std::isnan(upper) || upper > 0.0, "grid spec: upper bound must be > 0");
    detail::require(std::isnan(coarse_step) || (std::isfinite(coarse_step) && coarse_step > 0.0),
                    "grid spec: coarse step must be > 0");
    detail::require(levels >= 0 && box_steps >= 1 && refine_factor >= 2, "grid spec: invalid refinement");
  }
};

struct OracleResult {
  PowerAllocation allocation;
  double objective = 0.0;
  std::vector<double> level_objectives;  // incumbent after the coarse pass and each refinement
  std::size_t evaluations = 0;
};

namespace detail {

struct GridVariable {
  std::size_t subchannel;
  int kind;  // 0 common, 1 confidential user 1, 2 confidential user 2
};

class GridSearch {
 public:
  GridSearch(const GainBounds& b, const Partition& part, const Weights& w, double budget, double upper)
      : bounds_(b), part_(part), weights_(w), budget_(budget), upper_(upper),
        scratch_(PowerAllocation::zeros(b.size(), budget)) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (l + 1 < b.size()) vars_.push_back({l, 0});
      if (part.in(Advantage::user1, l)) vars_.push_back({l, 1});
      if (part.in(Advantage::user2, l)) vars_.push_back({l, 2});
    }
    // The common power of the last sub-channel absorbs whatever the free
    // variables leave; optima always spend the full budget because extra
    // common power raises both common rates.
  }

  [[nodiscard]] std::size_t dimension() const noexcept { return vars_.size(); }

  // Visits the grid lo[k] + j * step (j integer, within [lo[k], hi[k]]) in
  // lexicographic order and keeps the first strict maximum.
  void scan(const std::vector<double>& lo, const std::vector<double>& hi, double step) {
    std::vector<double> x(vars_.size(), 0.0);
    recurse(0, 0.0, lo, hi, step, x);
  }

  [[nodiscard]] bool found() const noexcept { return found_; }
  [[nodiscard]] double best_value() const noexcept { return best_value_; }
  [[nodiscard]] const std::vector<double>& best_point() const noexcept { return best_; }
  [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }

  [[nodiscard]] PowerAllocation materialize(const std::vector<double>& x) const {
    PowerAllocation p = PowerAllocation::zeros(bounds_.size(), budget_);
    fill(p, x);
    return p;
  }

 private:
  void fill(PowerAllocation& p, const std::vector<double>& x) const {
    double used = 0.0;
    std::fill(p.common.begin(), p.common.end(), 0.0);
    std::fill(p.confidential[0].begin(), p.confidential[0].end(), 0.0);
    std::fill(p.confidential[1].begin(), p.confidential[1].end(), 0.0);
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      const auto& v = vars_[k];
      (v.kind == 0 ? p.common : p.confidential[static_cast<std::size_t>(v.kind - 1)])[v.subchannel] = x[k];
      used += x[k];
    }
    p.common.back() = std::max(0.0, budget_ - used);
  }

  void recurse(std::size_t k, double used, const std::vector<double>& lo, const std::vector<double>& hi,
               double step, std::vector<double>& x) {
    if (k == vars_.size()) {
      const double rest = budget_ - used;
      if (rest < -1e-12 * budget_ || rest > upper_ * (1.0 + 1e-12)) return;
      fill(scratch_, x);
      const double v = weighted_sum_rate(bounds_, part_, weights_, scratch_);
      ++evaluations_;
      if (!found_ || v > best_value_) {
        found_ = true;
        best_value_ = v;
        best_ = x;
      }
      return;
    }
    const auto count = static_cast<long>(std::floor((hi[k] - lo[k]) / step + 1e-9));
    for (long j = 0; j <= count; ++j) {
      const double value = std::clamp(lo[k] + static_cast<double>(j) * step, 0.0, hi[k]);
      if (used + value > budget_ * (1.0 + 1e-12)) break;
      x[k] = value;
      recurse(k + 1, used + value, lo, hi, step, x);
    }
  }

  const GainBounds& bounds_;
  const Partition& part_;
  const Weights& weights_;
  double budget_;
  double upper_;
  PowerAllocation scratch_;
  std::vector<GridVariable> vars_;
  bool found_ = false;
  double best_value_ = -std::numeric_limits<double>::infinity();
  std::vector<double> best_;
  std::size_t evaluations_ = 0;
};

}  // namespace detail

/// Brute-force maximizer of the weighted sum rate over the power simplex,
/// with confidential variables only on their owners' sets, followed by
/// `levels` rounds of local refinement around the incumbent. Cost grows as
/// (grid points)^(#variables); intended for up to three sub-channels.
inline OracleResult grid_search_optimum(const GainBounds& bounds, const Partition& part, const Weights& w,
                                        double budget, const GridSpec& grid = {}) {
  bounds.validate();
  w.validate();
  grid.validate();
  detail::require(part.size() == bounds.size(), "grid search: partition length mismatch");
  detail::require(std::isfinite(budget) && budget >= 0.0, "grid search: budget must be finite and >= 0");

  OracleResult out;
  if (budget == 0.0) {
    out.allocation = PowerAllocation::zeros(bounds.size(), 0.0);
    out.level_objectives.assign(static_cast<std::size_t>(grid.levels) + 1, 0.0);
    return out;
  }
  const double upper = std::isnan(grid.upper) ? budget : grid.upper;
  double step = std::isnan(grid.coarse_step) ? budget / 20.0 : grid.coarse_step;

  detail::GridSearch search(bounds, part, w, budget, upper);
  const std::size_t dim = search.dimension();
  search.scan(std::vector<double>(dim, 0.0), std::vector<double>(dim, std::min(upper, budget)), step);
  if (!search.found()) throw SolverError("grid search: grid too coarse, no feasible point found");
  out.level_objectives.push_back(search.best_value());

  for (int level = 0; level < grid.levels; ++level) {
    const std::vector<double> center = search.best_point();
    const double box = grid.box_steps * step;
    step /= grid.refine_factor;
    std::vector<double> lo(dim), hi(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      // Align the box to the incumbent so that it is revisited exactly.
      const double reach_down = std::min(box, center[k]);
      lo[k] = center[k] - std::floor(reach_down / step + 1e-9) * step;
      hi[k] = std::min(std::min(upper, budget), center[k] + box);
    }
    search.scan(lo, hi, step);
    out.level_objectives.push_back(search.best_value());
  }
  out.allocation = search.materialize(search.best_point());
  out.objective = search.best_value();
  out.evaluations = search.evaluations();
  return out;
}

/// Duals attached to a candidate allocation.
struct KktDuals {
  Problem problem = Problem::common_user1;
  std::optional<double> lambda;
  std::optional<double> mu;
};

struct KktEntry {
  std::size_t subchannel = 0;
  double common = 0.0;        // residual of the derivative w.r.t. common power
  double confidential = 0.0;  // residual of the derivative w.r.t. confidential power (0 on S3)
  bool set_violation = false;

  [[nodiscard]] double worst() const { return set_violation ? std::numeric_limits<double>::infinity() : std::max(common, confidential); }
};

struct KktReport {
  std::vector<KktEntry> entries;
  double max_residual = 0.0;

  [[nodiscard]] bool pass(double tol = 1e-6) const { return max_residual <= tol; }
};

/// First-order conditions of the per-sub-channel Lagrangian. With c the
/// confidential and q the common power on a sub-channel, and u_c / u_0 the
/// marginal utilities net of the price lambda,
///   d/dq = u_0(c + q)
///   d/dc = u_c(c) - u_0(c) + u_0(c + q)
/// Positive powers need a zero derivative, zero powers a nonpositive one.
inline KktReport kkt_residuals(const GainBounds& bounds, const Partition& part, const Weights& w,
                               const PowerAllocation& p, const KktDuals& duals) {
  detail::require(duals.lambda.has_value(), "kkt: lambda is required");
  detail::require(duals.problem != Problem::mixed || duals.mu.has_value(), "kkt: mixed problem requires mu");
  bounds.validate();
  detail::require(p.size() == bounds.size() && part.size() == bounds.size(), "kkt: length mismatch");
  const double lambda = *duals.lambda;
  const double c0 = w.common / (2.0 * numeric::ln2);

  auto common_marginal = [&](std::size_t l, double x) {
    const double a1 = bounds.lo(User::one, l);
    const double a2 = bounds.lo(User::two, l);
    switch (duals.problem) {
      case Problem::common_user1: return c0 * a1 / (1.0 + a1 * x) - lambda;
      case Problem::common_user2: return c0 * a2 / (1.0 + a2 * x) - lambda;
      case Problem::mixed: {
        const double mu = *duals.mu;
        return c0 * (mu * a1 / (1.0 + a1 * x) + (1.0 - mu) * a2 / (1.0 + a2 * x)) - lambda;
      }
    }
    return 0.0;
  };
  auto conf_marginal = [&](User u, std::size_t l, double x) {
    const double legit = bounds.lo(u, l);
    const double leak = bounds.hi(other(u), l);
    return w.of(u) / (2.0 * numeric::ln2) * (legit / (1.0 + legit * x) - leak / (1.0 + leak * x)) - lambda;
  };
  auto residual = [](double power, double derivative) {
    return power > 0.0 ? std::abs(derivative) : std::max(derivative, 0.0);
  };

  KktReport rep;
  for (std::size_t l = 0; l < bounds.size(); ++l) {
    KktEntry e;
    e.subchannel = l;
    std::optional<User> owner;
    if (part.in(Advantage::user1, l)) owner = User::one;
    if (part.in(Advantage::user2, l)) owner = User::two;
    for (User u : {User::one, User::two})
      if (p.conf(u, l) != 0.0 && owner != u) e.set_violation = true;

    const double c = owner ? p.conf(*owner, l) : 0.0;
    const double q = p.common[l];
    const double d_common = common_marginal(l, c + q);
    e.common = residual(q, d_common);
    if (owner) {
      const double d_conf = conf_marginal(*owner, l, c) - common_marginal(l, c) + d_common;
      e.confidential = residual(c, d_conf);
    }
    rep.max_residual = std::max(rep.max_residual, e.worst());
    rep.entries.push_back(e);
  }
  return rep;
}

inline KktReport kkt_residuals(const GainBounds& bounds, const Partition& part, const Weights& w,
                               const AllocationResult& res) {
  return kkt_residuals(bounds, part, w, res.allocation,
                       KktDuals{res.diagnostics.problem, res.diagnostics.lambda, res.diagnostics.mu});
}

/// A self-contained allocation problem.
struct Instance {
  GainBounds bounds;
  Partition partition;
  Weights weights;
  double budget = 1.0;
};

/// Random test instance: exponential gains with random means, optionally
/// widened into lower/upper bounds, random positive weights and budget.
inline Instance random_instance(std::uint64_t seed, std::size_t subchannels, bool imperfect) {
  detail::require(subchannels >= 1, "random instance: at least one sub-channel");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance inst;
  for (std::size_t u = 0; u < 2; ++u) {
    inst.bounds.lower[u].resize(subchannels);
    inst.bounds.upper[u].resize(subchannels);
    for (std::size_t l = 0; l < subchannels; ++l) {
      const double mean = 0.5 + 9.5 * unit(gen);
      const double g = std::max(1e-3, -mean * std::log1p(-unit(gen)));
      const double shrink = imperfect ? 0.6 + 0.4 * unit(gen) : 1.0;
      const double grow = imperfect ? 1.0 + 0.5 * unit(gen) : 1.0;
      inst.bounds.lower[u][l] = g * shrink;
      inst.bounds.upper[u][l] = g * grow;
    }
  }
  inst.partition = partition(inst.bounds);
  inst.weights = Weights{0.2 + 2.8 * unit(gen), 0.2 + 2.8 * unit(gen), 0.2 + 2.8 * unit(gen)};
  inst.budget = 0.5 + 9.5 * unit(gen);
  return inst;
}

/// Outcome of validating the allocator on one instance.
struct InstanceCheck {
  double allocator_objective = 0.0;
  double oracle_objective = 0.0;
  double kkt_max = 0.0;
  double power_error = 0.0;  // |total - P| / P
  bool discipline_ok = true;
  bool power_ok = true;
  bool lemma_ok = true;
  int step = 0;

  [[nodiscard]] double gap() const { return oracle_objective - allocator_objective; }
  [[nodiscard]] bool pass(double gap_tol = 1e-3, double kkt_tol = 1e-6) const {
    return gap() <= gap_tol && kkt_max <= kkt_tol && discipline_ok && power_ok && lemma_ok;
  }
};

/// Allocation, feasibility, selection-rule, KKT and grid-oracle checks.
inline InstanceCheck check_instance(const Instance& inst, const SolverConfig& cfg = {}, const GridSpec& grid = {}) {
  InstanceCheck chk;
  const AllocationResult res = allocate(inst.bounds, inst.partition, inst.weights, inst.budget, cfg);
  chk.allocator_objective = weighted_sum_rate(inst.bounds, inst.partition, inst.weights, res.allocation);
  chk.oracle_objective = grid_search_optimum(inst.bounds, inst.partition, inst.weights, inst.budget, grid).objective;
  chk.kkt_max = kkt_residuals(inst.bounds, inst.partition, inst.weights, res).max_residual;
  chk.step = res.diagnostics.step;

  const PowerAllocation& p = res.allocation;
  bool nonneg = true;
  for (std::size_t l = 0; l < p.size(); ++l)
    nonneg = nonneg && p.common[l] >= 0.0 && p.confidential[0][l] >= 0.0 && p.confidential[1][l] >= 0.0;
  chk.discipline_ok = nonneg && check_set_discipline(inst.partition, p).ok();
  const double total = p.total();
  chk.power_error = inst.budget > 0.0 ? std::abs(total - inst.budget) / inst.budget : total;
  chk.power_ok = p.is_zero() ? inst.budget == 0.0 : chk.power_error <= 1e-6;

  const double r01 = common_rate_user(inst.bounds, p, User::one);
  const double r02 = common_rate_user(inst.bounds, p, User::two);
  const bool c1 = r01 < r02 - cfg.mu_tol;
  const bool c2 = r01 > r02 + cfg.mu_tol;
  const bool c3 = std::abs(r01 - r02) <= cfg.mu_tol;
  const int held = int(c1) + int(c2) + int(c3);
  const int expected_step = c1 ? 1 : (c2 ? 2 : 3);
  chk.lemma_ok = held == 1 && expected_step == chk.step;
  return chk;
}

}  // namespace pbcc

#endif  // PBCC_ORACLE_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Optimal power allocation for one boundary point of the secrecy capacity
// region, i.e. the maximizer of
//
//   w0 * min(R01, R02) + w1 * R1 + w2 * R2   subject to  sum of powers <= P.
//
// The max-min is split into three problems that differ only in how the
// common rate is measured:
//   common_user1  maximizes with R01 in place of min(R01, R02)
//   common_user2  the same with the users exchanged
//   mixed         uses mu * R01 + (1 - mu) * R02 and picks mu so that the
//                 two common rates coincide
// Each problem has a closed-form per-sub-channel solution for a fixed power
// price lambda. lambda is found by bisection on the total power and mu by an
// outer bisection on R01 - R02.
//
// Notation used in the per-sub-channel formulas, for the user i that owns the
// confidential message on the sub-channel and the other user j:
//   A = 1 / lower_i,  B = 1 / lower_j,  C = 1 / upper_j,  delta = C - A
//   r = w_i / w0,     K = w0 / (2 lambda ln 2)

#ifndef PBCC_ALLOCATOR_HPP
#define PBCC_ALLOCATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbcc/numeric.hpp"
#include "pbcc/rates.hpp"
#include "pbcc/types.hpp"

namespace pbcc {

enum class Problem : std::uint8_t { common_user1, common_user2, mixed };

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::common_user1: return "common_user1";
    case Problem::common_user2: return "common_user2";
    case Problem::mixed: return "mixed";
  }
  return "?";
}

/// Which denominator the follower-set threshold of the single-decoder
/// problem uses: lower_f - upper_l (theorem form) or upper_f - upper_l
/// (appendix form). Only the theorem form places the threshold where the
/// product of the two intersection points changes sign.
enum class FollowerThreshold : std::uint8_t { theorem, appendix };

struct SolverConfig {
  double lambda_tol = 1e-12;  // relative total-power tolerance
  double mu_tol = 1e-6;       // |R01 - R02| tolerance in bits
  int max_iters = 200;
  double bracket_growth = 16.0;
  FollowerThreshold follower_threshold = FollowerThreshold::theorem;

  void validate() const {
    detail::require(lambda_tol > 0.0 && mu_tol > 0.0, "solver config: tolerances must be > 0");
    detail::require(max_iters >= 1, "solver config: max_iters must be >= 1");
    detail::require(bracket_growth > 1.0, "solver config: bracket_growth must be > 1");
  }
};

struct DualState {
  double lambda = 0.0;
  std::optional<double> mu;
};

/// Per-sub-channel helper terms of the closed-form solution for one user.
/// Entries are NaN where a formula is undefined (e.g. square roots of
/// negative numbers outside the user's advantage set, or mu-dependent terms
/// when no mu is given).
struct HelperTerms {
  std::vector<double> delta;
  std::vector<double> beta;        // largest root of the confidential marginal
  std::vector<double> gamma;       // root of the single-decoder common marginal
  std::vector<double> zeta;        // common/confidential intersection, same decoder
  std::vector<double> nu;          // root of the mu-mixed common marginal, printed form
  std::vector<double> big_delta;   // discriminant for theta
  std::vector<double> theta;       // intersection when the other user decodes the common message
  std::vector<double> big_lambda;  // discriminant for xi, printed form
  std::vector<double> xi;          // mu-mixed intersection, printed form
  // Values re-derived from the stationarity conditions themselves.
  std::vector<double> nu_root;
  std::vector<double> crossing_disc;
  std::vector<double> crossing;
};

/// Branch bookkeeping surfaced in the diagnostics.
struct BranchCounts {
  int follower_fallbacks = 0;  // theta discriminant negative, confidential power dropped
  int nu_disagreements = 0;    // printed nu differs from the stationarity root by > 1e-6
  int zero_band = 0;           // crossing discriminant treated as exactly zero
};

namespace detail {

// Scalar inputs for one (user, sub-channel) pair.
struct TermInputs {
  double A, B, C;  // inverse gains, see header comment
  double r;        // w_i / w0
  double w_own;
  double w0;
  double lambda;
  double mu_own;  // weight of the owner's common rate in the mixed problem

  [[nodiscard]] double K() const { return w0 / (2.0 * lambda * numeric::ln2); }
  [[nodiscard]] double delta() const { return C - A; }
  [[nodiscard]] double M() const { return mu_own * B + (1.0 - mu_own) * A; }

  [[nodiscard]] double beta() const {
    const double d = delta();
    return 0.5 * std::sqrt(d * (d + 2.0 * w_own / (lambda * numeric::ln2))) - 0.5 * (C + A);
  }
  [[nodiscard]] double gamma() const { return K() - A; }
  [[nodiscard]] double zeta() const { return r * delta() - C; }

  [[nodiscard]] double nu_printed() const {
    const double k = K();
    const double s = (B - A - k) * (B - A - k) + 4.0 * k * mu_own * (B - A);
    return 0.5 * std::sqrt(s) - 0.5 * (B + A - k);
  }
  // Root of mu/(A + x) + (1 - mu)/(B + x) = 1/K.
  [[nodiscard]] double nu_root() const {
    const double k = K();
    return numeric::larger_root(A + B - k, A * B - k * M()).value_or(std::numeric_limits<double>::quiet_NaN());
  }

  // The bracketed product form divides by delta; this is its expansion.
  [[nodiscard]] double big_delta() const {
    const double d = delta();
    return r * r * d * d + 2.0 * r * d * (2.0 * B - A - C) + d * d;
  }
  [[nodiscard]] double theta_printed() const { return 0.5 * (r * delta() - (C + A) + std::sqrt(big_delta())); }
  // Larger root of x^2 + (C + A - r delta) x + (A C - r delta B) = 0.
  [[nodiscard]] double theta_root() const {
    return numeric::larger_root(C + A - r * delta(), A * C - r * delta() * B)
        .value_or(std::numeric_limits<double>::quiet_NaN());
  }

  [[nodiscard]] double big_lambda_printed() const {
    const double d = delta();
    const double m = mu_own;
    return d * d * r * r + 2.0 * r * (d * ((2.0 - m) * B - (1.0 - m) * A - C)) + d * d +
           m * (B - A) * (m * (B - A) - 2.0 * (C - B));
  }
  [[nodiscard]] double xi_printed() const {
    return 0.5 * (r * delta() - (C + A) - mu_own * (B - A) + std::sqrt(big_lambda_printed()));
  }

  // Discriminant of x^2 + (C + M - r delta) x + (C M - r delta B) = 0, whose
  // larger root is where the mixed common marginal meets the confidential one.
  [[nodiscard]] double crossing_disc() const {
    const double d = delta();
    const double m = mu_own;
    const double c_minus_m = d - m * (B - A);
    return d * d * r * r + 2.0 * r * d * ((2.0 - m) * B - (1.0 - m) * A - C) + c_minus_m * c_minus_m;
  }
  [[nodiscard]] double crossing() const {
    return numeric::larger_root(C + M() - r * delta(), C * M() - r * delta() * B)
        .value_or(std::numeric_limits<double>::quiet_NaN());
  }
};

inline TermInputs term_inputs(const GainBounds& b, const Weights& w, double lambda, double mu_own, User owner,
                              std::size_t l) {
  const User eve = other(owner);
  return TermInputs{1.0 / b.lo(owner, l), 1.0 / b.lo(eve, l), 1.0 / b.hi(eve, l), w.of(owner) / w.common,
                    w.of(owner), w.common, lambda, mu_own};
}

inline double mu_of(User u, double mu) { return u == User::one ? mu : 1.0 - mu; }

inline void check_problem(const GainBounds& bounds, const Partition& part, const Weights& w) {
  bounds.validate();
  w.validate();
  require(part.size() == bounds.size(), "allocator: partition length does not match the gain bounds");
  for (std::size_t l = 0; l < bounds.size(); ++l) {
    for (User u : {User::one, User::two})
      require(bounds.lo(u, l) > 0.0, "allocator: gain bounds must be strictly positive (division by alpha)");
    if (part.in(Advantage::user1, l))
      require(bounds.lo(User::one, l) > bounds.hi(User::two, l), "allocator: S1 member without advantage");
    if (part.in(Advantage::user2, l))
      require(bounds.lo(User::two, l) > bounds.hi(User::one, l), "allocator: S2 member without advantage");
  }
}

struct SubchannelPowers {
  double common = 0.0;
  double confidential = 0.0;
};

// Nested-interval solution once the intersection point is known: the
// confidential message takes [0, min(root_conf, cross)], the common message
// the remainder up to its own root.
inline SubchannelPowers crossing_branch(double root_common, double root_conf, double cross) {
  return {numeric::positive_part(root_common - cross), numeric::positive_part(std::min(root_conf, cross))};
}

}  // namespace detail

/// Evaluates the helper terms for `user` on every sub-channel.
inline HelperTerms helper_terms(const GainBounds& bounds, const Weights& weights, const DualState& dual, User user) {
  bounds.validate();
  weights.validate();
  detail::require(std::isfinite(dual.lambda) && dual.lambda > 0.0, "helper terms: lambda must be > 0");
  if (dual.mu) detail::require(*dual.mu > 0.0 && *dual.mu < 1.0, "helper terms: mu must lie in (0, 1)");
  const std::size_t n = bounds.size();
  for (std::size_t l = 0; l < n; ++l)
    for (User u : {User::one, User::two})
      detail::require(bounds.lo(u, l) > 0.0 && bounds.hi(u, l) > 0.0, "helper terms: gains must be > 0");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  HelperTerms t;
  for (auto* v : {&t.delta, &t.beta, &t.gamma, &t.zeta, &t.nu, &t.big_delta, &t.theta, &t.big_lambda, &t.xi,
                  &t.nu_root, &t.crossing_disc, &t.crossing})
    v->assign(n, nan);
  const double mu_own = dual.mu ? detail::mu_of(user, *dual.mu) : nan;
  for (std::size_t l = 0; l < n; ++l) {
    const auto in = detail::term_inputs(bounds, weights, dual.lambda, mu_own, user, l);
    t.delta[l] = in.delta();
    t.beta[l] = in.beta();
    t.gamma[l] = in.gamma();
    t.zeta[l] = in.zeta();
    t.big_delta[l] = in.big_delta();
    t.theta[l] = in.theta_printed();
    if (dual.mu) {
      t.nu[l] = in.nu_printed();
      t.nu_root[l] = in.nu_root();
      t.big_lambda[l] = in.big_lambda_printed();
      t.xi[l] = in.xi_printed();
      t.crossing_disc[l] = in.crossing_disc();
      t.crossing[l] = in.crossing();
    }
  }
  return t;
}

/// Closed-form maximizer of the single-decoder Lagrangian at price `lambda`.
/// `leader` is the user whose common rate is optimized (user one for the
/// first problem, user two for its mirror).
inline PowerAllocation solve_single_decoder_at_lambda(const GainBounds& bounds, const Partition& part,
                                                      const Weights& w, double lambda, User leader,
                                                      const SolverConfig& cfg = {}, BranchCounts* counts = nullptr) {
  detail::require(std::isfinite(lambda) && lambda > 0.0, "single-decoder solve: lambda must be > 0");
  const User follower = other(leader);
  const std::size_t n = bounds.size();
  PowerAllocation p = PowerAllocation::zeros(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const auto lead = detail::term_inputs(bounds, w, lambda, 1.0, leader, l);
    const double gamma = lead.gamma();
    double& common = p.common[l];
    common = numeric::positive_part(gamma);

    if (part.in(advantage_of(leader), l)) {
      const double a = bounds.lo(leader, l);
      const double b = bounds.hi(follower, l);
      if (lead.r > a / (a - b)) {
        const auto s = detail::crossing_branch(gamma, lead.beta(), lead.zeta());
        common = s.common;
        p.confidential[index(leader)][l] = s.confidential;
      }
    } else if (part.in(advantage_of(follower), l)) {
      const auto fol = detail::term_inputs(bounds, w, lambda, 1.0, follower, l);
      const double denom = cfg.follower_threshold == FollowerThreshold::theorem
                               ? bounds.lo(follower, l) - bounds.hi(leader, l)
                               : bounds.hi(follower, l) - bounds.hi(leader, l);
      if (fol.r > bounds.lo(leader, l) / denom) {
        if (fol.big_delta() < 0.0) {
          if (counts) ++counts->follower_fallbacks;
        } else {
          const auto s = detail::crossing_branch(gamma, fol.beta(), fol.theta_root());
          common = s.common;
          p.confidential[index(follower)][l] = s.confidential;
        }
      }
    }
  }
  p.budget = p.total();
  return p;
}

/// Closed-form maximizer of the mu-mixed Lagrangian at (lambda, mu).
inline PowerAllocation solve_mixed_at_lambda_mu(const GainBounds& bounds, const Partition& part, const Weights& w,
                                                double lambda, double mu, BranchCounts* counts = nullptr) {
  detail::require(std::isfinite(lambda) && lambda > 0.0, "mixed solve: lambda must be > 0");
  detail::require(mu > 0.0 && mu < 1.0, "mixed solve: mu must lie in (0, 1)");
  const std::size_t n = bounds.size();
  PowerAllocation p = PowerAllocation::zeros(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const User owner = part.in(Advantage::user2, l) ? User::two : User::one;
    const auto in = detail::term_inputs(bounds, w, lambda, detail::mu_of(owner, mu), owner, l);
    const double nu = in.nu_root();
    if (counts && std::abs(nu - in.nu_printed()) > 1e-6 * std::max(1.0, std::abs(nu))) ++counts->nu_disagreements;
    p.common[l] = numeric::positive_part(nu);
    if (part.in(Advantage::none, l) || !(in.delta() > 0.0)) continue;

    const User eve = other(owner);
    const double lo_own = bounds.lo(owner, l);
    const double lo_eve = bounds.lo(eve, l);
    const double hi_eve = bounds.hi(eve, l);
    const double mu_own = in.mu_own;
    const double mu_eve = 1.0 - mu_own;
    const double gap = lo_own - hi_eve;
    const double thr_cross = (mu_own * lo_own + mu_eve * lo_eve) / gap;
    const double thr_touch = (lo_own + mu_eve * hi_eve + mu_own * lo_own * hi_eve / lo_eve) / gap;

    const double disc = in.crossing_disc();
    const double scale = std::pow(std::abs(in.r * in.delta()) + in.C + in.M(), 2.0);
    detail::SubchannelPowers s{numeric::positive_part(nu), 0.0};
    if (disc > 1e-12 * std::max(1.0, scale)) {
      if (in.r > thr_cross) s = detail::crossing_branch(nu, in.beta(), in.crossing());
    } else if (disc >= -1e-12 * std::max(1.0, scale)) {
      if (counts) ++counts->zero_band;
      if (in.r > thr_touch) s = detail::crossing_branch(nu, in.beta(), 0.5 * (in.r * in.delta() - in.C - in.M()));
    } else if (in.r > thr_cross) {
      s = {0.0, numeric::positive_part(in.beta())};
    }
    p.common[l] = s.common;
    p.confidential[index(owner)][l] = s.confidential;
  }
  p.budget = p.total();
  return p;
}

struct LambdaSearch {
  double lambda = 0.0;
  PowerAllocation allocation;
  int iterations = 0;
  BranchCounts counts;
};

namespace detail {

// Price at which every marginal utility is nonpositive at zero power.
inline double lambda_ceiling(const GainBounds& b, const Weights& w) {
  double hi = 0.0;
  for (std::size_t l = 0; l < b.size(); ++l)
    for (User u : {User::one, User::two})
      hi = std::max(hi, (w.common + w.of(u)) * b.lo(u, l) / (2.0 * numeric::ln2));
  return hi;
}

inline PowerAllocation solve_at(Problem problem, const GainBounds& b, const Partition& part, const Weights& w,
                                double lambda, std::optional<double> mu, const SolverConfig& cfg,
                                BranchCounts* counts) {
  switch (problem) {
    case Problem::common_user1: return solve_single_decoder_at_lambda(b, part, w, lambda, User::one, cfg, counts);
    case Problem::common_user2: return solve_single_decoder_at_lambda(b, part, w, lambda, User::two, cfg, counts);
    case Problem::mixed: return solve_mixed_at_lambda_mu(b, part, w, lambda, mu.value(), counts);
  }
  return {};
}

}  // namespace detail

/// Bisection on the power price until the allocation spends the budget.
/// Total power is continuous and nonincreasing in lambda.
inline LambdaSearch search_lambda(Problem problem, const GainBounds& bounds, const Partition& part,
                                  const Weights& w, double budget, std::optional<double> mu,
                                  const SolverConfig& cfg = {}) {
  detail::check_problem(bounds, part, w);
  cfg.validate();
  detail::require(std::isfinite(budget) && budget >= 0.0, "lambda search: budget must be finite and >= 0");
  detail::require(problem != Problem::mixed || mu.has_value(), "lambda search: mixed problem requires mu");

  LambdaSearch out;
  auto solve = [&](double lam) {
    BranchCounts c;
    PowerAllocation p = detail::solve_at(problem, bounds, part, w, lam, mu, cfg, &c);
    p.budget = budget;
    return std::pair{std::move(p), c};
  };
  auto accept = [&](double lam, std::pair<PowerAllocation, BranchCounts> s, int iters) {
    out.lambda = lam;
    out.allocation = std::move(s.first);
    out.counts = s.second;
    out.iterations = iters;
    return out;
  };

  double hi = detail::lambda_ceiling(bounds, w);
  auto s_hi = solve(hi);
  int iters = 0;
  if (budget == 0.0) {
    out.allocation = PowerAllocation::zeros(bounds.size(), 0.0);
    out.lambda = hi;
    return out;
  }
  const double tol = cfg.lambda_tol * budget;
  while (s_hi.first.total() > budget) {
    hi *= cfg.bracket_growth;
    s_hi = solve(hi);
    if (++iters > cfg.max_iters) throw SolverError("lambda search: no upper bracket found, last hi = " + std::to_string(hi));
  }
  double lo = hi * std::ldexp(1.0, -40);
  auto s_lo = solve(lo);
  while (s_lo.first.total() < budget - tol) {
    if (lo < 1e-280) return accept(lo, std::move(s_lo), iters);  // budget cannot be spent
    lo /= cfg.bracket_growth;
    s_lo = solve(lo);
    if (++iters > cfg.max_iters)
      throw SolverError("lambda search: no lower bracket found within max_iters, last bracket [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  for (int k = 0; k < cfg.max_iters; ++k, ++iters) {
    if (std::abs(s_lo.first.total() - budget) <= tol) return accept(lo, std::move(s_lo), iters);
    if (std::abs(s_hi.first.total() - budget) <= tol) return accept(hi, std::move(s_hi), iters);
    const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    auto s_mid = solve(mid);
    if (s_mid.first.total() > budget) {
      lo = mid;
      s_lo = std::move(s_mid);
    } else {
      hi = mid;
      s_hi = std::move(s_mid);
    }
  }
  // Bracket collapsed to adjacent doubles; take the endpoint that fits.
  const double err_lo = std::abs(s_lo.first.total() - budget);
  const double err_hi = std::abs(s_hi.first.total() - budget);
  const bool take_hi = err_hi <= err_lo || s_lo.first.total() > budget * (1.0 + 1e-12);
  const double err = take_hi ? err_hi : err_lo;
  if (err > std::max(cfg.lambda_tol, 1e-9) * budget)
    throw SolverError("lambda search: power mismatch " + std::to_string(err) + " after bracket collapse");
  return take_hi ? accept(hi, std::move(s_hi), iters) : accept(lo, std::move(s_lo), iters);
}

struct MuSearch {
  double mu = 0.5;
  double lambda = 0.0;
  PowerAllocation allocation;
  double gap = 0.0;  // R01 - R02 at the returned allocation
  int iterations = 0;
  int lambda_iterations = 0;
  BranchCounts counts;
};

/// Outer bisection on mu for the mixed problem, with a full lambda search per
/// trial mu, until the two common rates agree to within cfg.mu_tol.
inline MuSearch search_mu(const GainBounds& bounds, const Partition& part, const Weights& w, double budget,
                          const SolverConfig& cfg = {}) {
  cfg.validate();
  MuSearch out;
  struct Eval {
    double mu;
    LambdaSearch ls;
    double gap;
  };
  auto eval = [&](double mu) {
    LambdaSearch ls = search_lambda(Problem::mixed, bounds, part, w, budget, mu, cfg);
    out.lambda_iterations += ls.iterations;
    const double g =
        common_rate_user(bounds, ls.allocation, User::one) - common_rate_user(bounds, ls.allocation, User::two);
    return Eval{mu, std::move(ls), g};
  };
  auto finish = [&](Eval e) {
    out.mu = e.mu;
    out.lambda = e.ls.lambda;
    out.allocation = std::move(e.ls.allocation);
    out.counts = e.ls.counts;
    out.gap = e.gap;
    return out;
  };

  constexpr double edge = 1e-12;
  Eval lo = eval(edge);
  Eval hi = eval(1.0 - edge);
  out.iterations = 2;
  if (std::abs(hi.gap) <= cfg.mu_tol) return finish(std::move(hi));
  if (std::abs(lo.gap) <= cfg.mu_tol) return finish(std::move(lo));
  if (!(lo.gap < 0.0 && hi.gap > 0.0))
    throw SolverError("mu search: R01 - R02 has no sign change on (0, 1) (g(0+) = " + std::to_string(lo.gap) +
                      ", g(1-) = " + std::to_string(hi.gap) + ")");
  for (int k = 0; k < cfg.max_iters; ++k) {
    const double mid = 0.5 * (lo.mu + hi.mu);
    if (!(mid > lo.mu && mid < hi.mu)) break;
    Eval m = eval(mid);
    ++out.iterations;
    if (std::abs(m.gap) <= cfg.mu_tol) return finish(std::move(m));
    (m.gap < 0.0 ? lo : hi) = std::move(m);
  }
  Eval& best = std::abs(lo.gap) <= std::abs(hi.gap) ? lo : hi;
  if (std::abs(best.gap) > cfg.mu_tol)
    throw SolverError("mu search: |R01 - R02| = " + std::to_string(std::abs(best.gap)) +
                      " above tolerance after bracket collapse");
  return finish(std::move(best));
}

struct Diagnostics {
  int step = 0;  // which of the three selection steps produced the result
  Problem problem = Problem::common_user1;
  double lambda = 0.0;
  std::optional<double> mu;
  int lambda_iterations = 0;
  int mu_iterations = 0;
  double r01 = 0.0;
  double r02 = 0.0;
  BranchCounts counts;
};

struct AllocationResult {
  PowerAllocation allocation;
  RateTriple rates;
  double objective = 0.0;
  Diagnostics diagnostics;
};

/// Three-step selection: solve with user 1 as common decoder and keep it if
/// user 1 is the common-rate bottleneck; otherwise the mirror problem; and
/// otherwise balance the two common rates through mu. Gaps within
/// cfg.mu_tol count as ties and go to the balanced step.
inline AllocationResult allocate(const GainBounds& bounds, const Partition& part, const Weights& w, double budget,
                                 const SolverConfig& cfg = {}) {
  detail::check_problem(bounds, part, w);
  cfg.validate();
  detail::require(std::isfinite(budget) && budget >= 0.0, "allocate: budget must be finite and >= 0");

  AllocationResult res;
  Diagnostics& d = res.diagnostics;
  auto finish = [&](PowerAllocation p) {
    p.budget = budget;
    res.allocation = std::move(p);
    res.rates = rate_triple(bounds, part, res.allocation);
    res.objective = weighted_sum(w, res.rates);
    d.r01 = common_rate_user(bounds, res.allocation, User::one);
    d.r02 = common_rate_user(bounds, res.allocation, User::two);
    return res;
  };

  for (const auto& [step, problem] : {std::pair{1, Problem::common_user1}, std::pair{2, Problem::common_user2}}) {
    LambdaSearch ls = search_lambda(problem, bounds, part, w, budget, std::nullopt, cfg);
    d.lambda_iterations += ls.iterations;
    const double r01 = common_rate_user(bounds, ls.allocation, User::one);
    const double r02 = common_rate_user(bounds, ls.allocation, User::two);
    const bool accepted = step == 1 ? r01 < r02 - cfg.mu_tol : r01 > r02 + cfg.mu_tol;
    if (accepted) {
      d.step = step;
      d.problem = problem;
      d.lambda = ls.lambda;
      d.counts = ls.counts;
      return finish(std::move(ls.allocation));
    }
  }

  MuSearch ms = search_mu(bounds, part, w, budget, cfg);
  d.step = 3;
  d.problem = Problem::mixed;
  d.lambda = ms.lambda;
  d.mu = ms.mu;
  d.mu_iterations = ms.iterations;
  d.lambda_iterations += ms.lambda_iterations;
  d.counts = ms.counts;
  return finish(std::move(ms.allocation));
}

}  // namespace pbcc

#endif  // PBCC_ALLOCATOR_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pbcc/cli.hpp"
#include "pbcc/pbcc.hpp"

namespace {

using namespace pbcc;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail, double seconds) {
  std::printf("%s %s %s (%.1f s)\n", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

std::vector<Instance> validation_instances() {
  std::vector<Instance> out;
  for (std::size_t k = 0; k < 100; ++k) out.push_back(random_instance(trial_seed(2024, k), 1 + k % 2, (k / 2) % 2 == 1));
  return out;
}

std::vector<Instance> large_instances() {
  std::vector<Instance> out;
  for (std::size_t k = 0; k < 300; ++k)
    out.push_back(random_instance(trial_seed(77, k), 1 + k % 64, k % 3 != 0));
  return out;
}

void ac1() {
  Timer t;
  const auto s = cli::validate_instances(100, 2, 2024, 1);
  const bool ok = s.passed == s.instances;
  report("AC1", ok,
         fmt("oracle agreement on %zu instances (L in {1,2}): passed %zu, max gap %.3g bits (tol 1e-3), max KKT %.3g "
             "(tol 1e-6)",
             s.instances, s.passed, s.max_gap, s.max_kkt),
         t.seconds());
}

void ac2_ac3() {
  Timer t;
  std::vector<Instance> all = validation_instances();
  for (auto& i : large_instances()) all.push_back(std::move(i));
  std::size_t feasible = 0, selection = 0, step3 = 0;
  double worst_power = 0.0, worst_step3 = 0.0;
  const SolverConfig cfg;
  for (const Instance& inst : all) {
    const AllocationResult r = allocate(inst.bounds, inst.partition, inst.weights, inst.budget, cfg);
    const PowerAllocation& p = r.allocation;
    bool nonneg = true;
    for (std::size_t l = 0; l < p.size(); ++l)
      for (double x : {p.common[l], p.confidential[0][l], p.confidential[1][l]}) nonneg = nonneg && x >= 0.0;
    const double err = p.is_zero() ? 0.0 : std::abs(p.total() - inst.budget) / inst.budget;
    worst_power = std::max(worst_power, err);
    if (nonneg && check_set_discipline(inst.partition, p).ok() && err <= 1e-6) ++feasible;

    const double r01 = common_rate_user(inst.bounds, p, User::one);
    const double r02 = common_rate_user(inst.bounds, p, User::two);
    const bool c1 = r01 < r02 - cfg.mu_tol, c2 = r01 > r02 + cfg.mu_tol, c3 = std::abs(r01 - r02) <= cfg.mu_tol;
    const int expected = c1 ? 1 : c2 ? 2 : 3;
    if (int(c1) + int(c2) + int(c3) == 1 && expected == r.diagnostics.step) ++selection;
    if (r.diagnostics.step == 3) {
      ++step3;
      worst_step3 = std::max(worst_step3, std::abs(r01 - r02));
    }
  }
  const double secs = t.seconds();
  report("AC2", feasible == all.size(),
         fmt("feasibility on %zu allocations (L up to 64): %zu ok, max |sum - P|/P %.3g (tol 1e-6)", all.size(),
             feasible, worst_power),
         secs);
  report("AC3", selection == all.size() && worst_step3 <= cfg.mu_tol,
         fmt("selection consistent on %zu/%zu instances, %zu step-3 results with max |R01 - R02| %.3g (tol 1e-6)",
             selection, all.size(), step3, worst_step3),
         0.0);
}

void ac4() {
  Timer t;
  const GainBounds unit{{std::vector<double>{1.0}, std::vector<double>{1.0}}, {std::vector<double>{1.0}, std::vector<double>{1.0}}};
  const PowerAllocation p0{{3.0}, {std::vector<double>{0.0}, std::vector<double>{0.0}}, 3.0};
  const double r01 = common_rate_user(unit, p0, User::one);

  const GainBounds adv{{std::vector<double>{3.0}, std::vector<double>{1.0}}, {std::vector<double>{3.0}, std::vector<double>{1.0}}};
  const PowerAllocation p1{{0.0}, {std::vector<double>{1.0}, std::vector<double>{0.0}}, 1.0};
  const double r1 = confidential_rate(adv, partition(adv), p1, User::one);

  const LambdaSearch ls = search_lambda(Problem::common_user1, unit, partition(unit), Weights{1, 1, 1}, 1.0, std::nullopt);
  const double lambda_ref = 1.0 / (4.0 * std::numbers::ln2);
  const double e1 = std::abs(r01 - 1.0), e2 = std::abs(r1 - 0.5), e3 = std::abs(ls.lambda - lambda_ref);
  report("AC4", e1 <= 1e-12 && e2 <= 1e-12 && e3 <= 1e-12,
         fmt("hand cases: |R01 - 1| = %.2g, |R1 - 0.5| = %.2g, |lambda - 1/(4 ln2)| = %.2g (tol 1e-12)", e1, e2, e3),
         t.seconds());
}

ExperimentConfig paper_scale() {
  ExperimentConfig c;
  c.L = 64;
  c.P = 64.0;
  c.snr1_db = {10.0};
  c.snr2_db = {10.0};
  c.trials = 200;
  c.seed = 1;
  return c;
}

void ac5() {
  Timer t;
  const std::vector<std::pair<double, double>> dirs{{1.0, 0.25}, {1.0, 0.5}, {1.0, 1.0}, {0.5, 1.0}, {0.25, 1.0}};
  const std::vector<Weights> grid{{1, 1, 1}, {1, 2, 1}, {1, 4, 1}, {0.5, 1, 3}, {2, 0.5, 1}, {1, 1.5, 0.25}};

  // Paired run: the mirrored experiment swaps the users' draws and weights.
  ExperimentConfig a = paper_scale();
  a.weight_grid = grid;
  ExperimentConfig b = a;
  b.swap_users = true;
  b.weight_grid.clear();
  for (const auto& w : grid) b.weight_grid.push_back(w.swapped());
  const ExperimentResult ra = region_sweep(a);
  const ExperimentResult rb = region_sweep(b);
  double worst_ratio = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& x = ra.rows[k];
    const auto& y = rb.rows[k];
    for (std::size_t u = 0; u < 2; ++u) {
      const double hw = std::max(x.confidential[u].half_width, y.confidential[1 - u].half_width);
      worst_ratio = std::max(worst_ratio, std::abs(x.confidential[u].mean - y.confidential[1 - u].mean) / hw);
    }
  }
  // Unpaired view on the same draws, reported only.
  double worst_unpaired = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ExperimentConfig m = a;
    m.weight_grid = {grid[k].swapped()};
    const ResultRow rm = region_sweep(m).rows[0];
    const double hw = std::hypot(ra.rows[k].confidential[0].half_width, rm.confidential[1].half_width);
    worst_unpaired = std::max(worst_unpaired, std::abs(ra.rows[k].confidential[0].mean - rm.confidential[1].mean) / hw);
  }

  std::vector<ContourPoint> lo, hi;
  bool converged = true;
  for (const auto& [w1, w2] : dirs) {
    lo.push_back(contour_point(a, 0.4, w1, w2));
    hi.push_back(contour_point(a, 0.8, w1, w2));
    converged = converged && lo.back().converged && hi.back().converged;
  }
  bool dominated = true;
  double margin = INFINITY;
  for (std::size_t k = 0; k < dirs.size(); ++k)
    for (std::size_t u = 0; u < 2; ++u) {
      const double d = lo[k].row.confidential[u].mean - hi[k].row.confidential[u].mean;
      margin = std::min(margin, d);
      dominated = dominated && d >= 0.0;
    }
  report("AC5", worst_ratio <= 1.0 && converged && dominated,
         fmt("paired symmetry max |E[R1](w1,w2) - E[R2](w2,w1)| / half-width = %.3g (tol 1, unpaired same-draw view "
             "%.3g); contours E[R0]=0.4/0.8 converged=%s, min dominance margin %.4g bits",
             worst_ratio, worst_unpaired, converged ? "yes" : "no", margin),
         t.seconds());
}

void ac6() {
  Timer t;
  ExperimentConfig c = paper_scale();
  c.snr1_db = {0.0, 10.0, 20.0};
  c.snr2_db = {0.0, 10.0, 20.0};
  const ExperimentResult r = compare_baselines(c);
  const std::size_t np = r.points.size();
  std::vector<double> opt(np * c.trials), uni(np * c.trials), split(np * c.trials);
  for (const auto& rec : r.records) {
    const double total = rec.objective * static_cast<double>(c.L);
    const std::size_t i = rec.point * c.trials + rec.trial;
    (rec.scheme == Scheme::optimal ? opt : rec.scheme == Scheme::uniform ? uni : split)[i] = total;
  }
  double worst = INFINITY;
  for (std::size_t i = 0; i < opt.size(); ++i) worst = std::min({worst, opt[i] - uni[i], opt[i] - split[i]});
  const double gap0 = r.row(0, Scheme::optimal).objective.mean - r.row(0, Scheme::uniform).objective.mean;
  const double gap20 = r.row(2, Scheme::optimal).objective.mean - r.row(2, Scheme::uniform).objective.mean;
  report("AC6", worst >= -1e-3 && gap20 > gap0,
         fmt("optimal minus best baseline per draw >= %.3g bits (tol -1e-3) over %zu draws; mean gap vs uniform "
             "%.4g at 0 dB, %.4g at 20 dB (per sub-channel)",
             worst, opt.size(), gap0, gap20),
         t.seconds());
}

void ac7() {
  Timer t;
  ExperimentConfig c = paper_scale();
  c.sigma = 0.01;
  c.epsilon = {0.01, 0.05, 0.1, 0.2};
  const ExperimentResult r = csit_sweep(c);
  bool conf_up = true, common_down = true;
  std::string trend;
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    const auto& row = r.rows[k];
    const double s = row.confidential[0].mean + row.confidential[1].mean;
    trend += fmt(" eps=%.2g:R0=%.4f,R1+R2=%.4f", c.epsilon[k], row.common.mean, s);
    if (k > 0) {
      const auto& prev = r.rows[k - 1];
      conf_up = conf_up && s >= prev.confidential[0].mean + prev.confidential[1].mean - 1e-12;
      common_down = common_down && row.common.mean <= prev.common.mean + 1e-12;
    }
  }
  ExperimentConfig z = c;
  z.sigma = 0.0;
  z.trials = 50;
  const ExperimentResult rz = csit_sweep(z);
  bool invariant = true;
  for (const auto& row : rz.rows)
    invariant = invariant && row.common.mean == rz.rows[0].common.mean &&
                row.confidential[0].mean == rz.rows[0].confidential[0].mean &&
                row.confidential[1].mean == rz.rows[0].confidential[1].mean &&
                row.objective.mean == rz.rows[0].objective.mean;
  report("AC7", conf_up && common_down && invariant,
         fmt("sigma=0.01: R1+R2 nondecreasing=%s, R0 nonincreasing=%s;%s; sigma=0 eps-invariant=%s",
             conf_up ? "yes" : "no", common_down ? "yes" : "no", trend.c_str(), invariant ? "yes" : "no"),
         t.seconds());
}

void ac8() {
  Timer t;
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n = 400'000;
  double worst_z = -INFINITY, worst_norm = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double var = db_to_linear(-5.0 + 25.0 * u(gen));
    const double sigma = std::exp(std::log(0.01) + u(gen) * std::log(100.0));
    const double eps = 0.01 + 0.19 * u(gen);
    const double h_hat = (2.0 * u(gen) - 1.0) * 2.0 * std::sqrt(var + sigma * sigma);
    const EstimationModel m{sigma, eps};
    const GainInterval g = margin_bounds(var, m, h_hat);

    // Gaussian posterior of h given h_hat, sampled directly.
    const double post_var = var * sigma * sigma / (var + sigma * sigma);
    std::normal_distribution<double> post(h_hat * var / (var + sigma * sigma), std::sqrt(post_var));
    std::size_t above = 0, below = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double h = post(gen);
      above += h * h > g.upper;
      below += h * h < g.lower;
    }
    const double se = std::sqrt(eps * (1.0 - eps) / static_cast<double>(n));
    for (std::size_t c : {above, below})
      worst_z = std::max(worst_z, (static_cast<double>(c) / static_cast<double>(n) - eps) / se);

    // Normalization of the conditional density, a = t^2.
    auto f = [&](double x) {
      x = std::max(x, 1e-150);
      return conditional_gain_density(var, m, h_hat, x * x) * 2.0 * x;
    };
    const double c = std::abs(h_hat) * var / (var + sigma * sigma);
    const double w = std::sqrt(post_var);
    std::vector<double> br;
    for (int j = -40; j <= 40; ++j) br.push_back(c + j * w);
    const double total = numeric::adaptive_simpson_split(f, 0.0, c + 40.0 * w, br, 1e-12);
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
  }
  report("AC8", worst_z <= 3.0 && worst_norm <= 1e-6,
         fmt("20 triples: max (P_hat(outside bound) - eps)/se = %.3g (tol 3), max |integral - 1| = %.3g (tol 1e-6)",
             worst_z, worst_norm),
         t.seconds());
}

void ac9() {
  Timer t;
  auto csv = [](const ExperimentResult& r) {
    std::ostringstream os;
    write_csv(os, r);
    return os.str();
  };
  bool same = true;
  for (unsigned threads : {1u, 3u}) {
    ExperimentConfig c = paper_scale();
    c.trials = 20;
    c.threads = threads;
    c.snr1_db = {0.0, 20.0};
    c.snr2_db = {0.0, 20.0};
    same = same && csv(compare_baselines(c)) == csv(compare_baselines(c));
    c.sigma = 0.05;
    c.epsilon = {0.05, 0.1};
    same = same && csv(csit_sweep(c)) == csv(csit_sweep(c));
    c.weight_grid = {Weights{1, 2, 1}, Weights{2, 1, 1}};
    same = same && csv(region_sweep(c)) == csv(region_sweep(c));
  }
  report("AC9", same, "compare/csit/region reruns at equal seed and thread count (1 and 3) give byte-identical CSV",
         t.seconds());
}

}  // namespace

int main() {
  ac1();
  ac2_ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}

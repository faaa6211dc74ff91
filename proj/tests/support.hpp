// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used only by the tests. They are written from
// the model definitions directly and share no code with the library beyond
// its value types.

#ifndef PBCC_TESTS_SUPPORT_HPP
#define PBCC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pbcc/types.hpp"

namespace pbcc::testing {

inline double log2_1p(double x) { return std::log2(1.0 + x); }

inline double direct_common_user(const GainBounds& b, const PowerAllocation& p, int user) {
  double r = 0.0;
  for (std::size_t l = 0; l < b.size(); ++l) {
    const double a = b.lower[static_cast<std::size_t>(user)][l];
    const double tot = p.common[l] + p.confidential[0][l] + p.confidential[1][l];
    const double noise = p.confidential[0][l] + p.confidential[1][l];
    r += 0.5 * (log2_1p(a * tot) - log2_1p(a * noise));
  }
  return r;
}

inline double direct_confidential(const GainBounds& b, const Partition& part, const PowerAllocation& p, int user) {
  const auto u = static_cast<std::size_t>(user);
  const Advantage own = user == 0 ? Advantage::user1 : Advantage::user2;
  double r = 0.0;
  for (std::size_t l = 0; l < b.size(); ++l) {
    if (part.label[l] != own) continue;
    const double x = p.confidential[u][l];
    r += 0.5 * (log2_1p(b.lower[u][l] * x) - log2_1p(b.upper[1 - u][l] * x));
  }
  return r;
}

inline double direct_objective(const GainBounds& b, const Partition& part, const Weights& w, const PowerAllocation& p) {
  return w.common * std::min(direct_common_user(b, p, 0), direct_common_user(b, p, 1)) +
         w.confidential[0] * direct_confidential(b, part, p, 0) + w.confidential[1] * direct_confidential(b, part, p, 1);
}

/// Lagrangian of the relaxed problem with the common rate replaced by
/// mu * R01 + (1 - mu) * R02 (mu = 1: user 1 decodes, mu = 0: user 2).
inline double direct_lagrangian(const GainBounds& b, const Partition& part, const Weights& w, double lambda, double mu,
                                const PowerAllocation& p) {
  double total = 0.0;
  for (std::size_t l = 0; l < b.size(); ++l) total += p.common[l] + p.confidential[0][l] + p.confidential[1][l];
  const double common = mu * direct_common_user(b, p, 0) + (1.0 - mu) * direct_common_user(b, p, 1);
  return w.common * common + w.confidential[0] * direct_confidential(b, part, p, 0) +
         w.confidential[1] * direct_confidential(b, part, p, 1) - lambda * total;
}

struct GridArgmax {
  double x = 0.0;
  double y = 0.0;
  double value = -INFINITY;
};

/// Maximizes f over [0, hi]^2: coarse grid, then a fine grid on a box around
/// the coarse incumbent.
inline GridArgmax grid_argmax_2d(const std::function<double(double, double)>& f, double hi, double coarse,
                                 double fine) {
  GridArgmax best;
  const int n = static_cast<int>(std::lround(hi / coarse));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double x = i * coarse, y = j * coarse;
      const double v = f(x, y);
      if (v > best.value) best = {x, y, v};
    }
  const GridArgmax c = best;
  const int m = static_cast<int>(std::lround(2.0 * coarse / fine));
  for (int i = -m; i <= m; ++i)
    for (int j = -m; j <= m; ++j) {
      const double x = c.x + i * fine, y = c.y + j * fine;
      if (x < 0.0 || y < 0.0) continue;
      const double v = f(x, y);
      if (v > best.value) best = {x, y, v};
    }
  return best;
}

/// Exact posterior draws of h given h_hat by rejection from the generative
/// model: h ~ N(0, prior_var), accepted with probability
/// exp(-(h_hat - h)^2 / (2 sigma^2)).
inline std::vector<double> posterior_samples(double prior_var, double sigma, double h_hat, std::size_t count,
                                             std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> prior(0.0, std::sqrt(prior_var));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out;
  out.reserve(count);
  while (out.size() < count) {
    const double h = prior(gen);
    const double d = (h_hat - h) / sigma;
    if (unit(gen) < std::exp(-0.5 * d * d)) out.push_back(h);
  }
  return out;
}

inline double empirical_quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return i + 1 < xs.size() ? xs[i] * (1.0 - frac) + xs[i + 1] * frac : xs[i];
}

inline GainBounds bounds_1(double lo1, double hi1, double lo2, double hi2) {
  return GainBounds{{std::vector<double>{lo1}, std::vector<double>{lo2}},
                    {std::vector<double>{hi1}, std::vector<double>{hi2}}};
}

inline PowerAllocation alloc_1(double p0, double p1, double p2, double budget) {
  return PowerAllocation{{p0}, {std::vector<double>{p1}, std::vector<double>{p2}}, budget};
}

}  // namespace pbcc::testing

#endif  // PBCC_TESTS_SUPPORT_HPP

// SPDX-License-Identifier: Apache-2.0

#ifndef PBCC_NUMERIC_HPP
#define PBCC_NUMERIC_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>

namespace pbcc::numeric {

inline constexpr double ln2 = std::numbers::ln2;

inline double positive_part(double x) noexcept { return x > 0.0 ? x : 0.0; }

namespace detail {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  // The relative floor stops recursion once roundoff dominates the estimate.
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol ||
      std::abs(diff) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(left + right))
    return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// The integrand must be finite on the closed interval.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Adaptive Simpson over [a, b] split at sorted interior breakpoints, so that
/// narrow peaks are not stepped over by the initial coarse samples.
template <class F>
double adaptive_simpson_split(F&& f, double a, double b, std::span<const double> breaks, double tol) {
  double total = 0.0;
  double left = a;
  for (double x : breaks) {
    if (x <= left || x >= b) continue;
    total += adaptive_simpson(f, left, x, tol);
    left = x;
  }
  total += adaptive_simpson(f, left, b, tol);
  return total;
}

/// Larger real root of the monic quadratic x^2 + b x + c, evaluated without
/// cancellation. Discriminants negative only at roundoff level count as a
/// double root; otherwise empty when the roots are complex.
inline std::optional<double> larger_root(double b, double c) noexcept {
  double disc = b * b - 4.0 * c;
  if (!std::isfinite(disc)) return std::nullopt;
  if (disc < 0.0) {
    if (disc < -1e-12 * (b * b + 4.0 * std::abs(c))) return std::nullopt;
    disc = 0.0;
  }
  const double s = std::sqrt(disc);
  if (b <= 0.0) return 0.5 * (-b + s);
  return -2.0 * c / (b + s);
}

}  // namespace pbcc::numeric

#endif  // PBCC_NUMERIC_HPP

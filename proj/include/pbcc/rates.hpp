// SPDX-License-Identifier: Apache-2.0
//
// Rate formulas of the secrecy capacity region of the parallel broadcast
// channel with one common and two confidential messages. Signals are real
// valued, hence the factor 1/2; all logarithms are base 2.

#ifndef PBCC_RATES_HPP
#define PBCC_RATES_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pbcc/numeric.hpp"
#include "pbcc/types.hpp"

namespace pbcc {

namespace detail {

// 0.5 * [log2(1 + g x) - log2(1 + g y)]
inline double half_log2_gap(double g, double x, double y) {
  return 0.5 * (std::log1p(g * x) - std::log1p(g * y)) / numeric::ln2;
}

inline void check_shapes(const GainBounds& bounds, const PowerAllocation& p) {
  detail::require(p.common.size() == bounds.size() && p.confidential[0].size() == bounds.size() &&
                      p.confidential[1].size() == bounds.size(),
                  "rates: allocation length does not match the gain bounds");
  for (std::size_t l = 0; l < p.size(); ++l)
    for (double x : {p.common[l], p.confidential[0][l], p.confidential[1][l]})
      detail::require(x >= 0.0 && std::isfinite(x), "rates: powers must be finite and >= 0");
}

}  // namespace detail

/// Common-message rate decodable by `user`, treating both confidential
/// signals as noise. Uses that user's lower gain bound on every sub-channel.
inline double common_rate_user(const GainBounds& bounds, const PowerAllocation& p, User user) {
  detail::check_shapes(bounds, p);
  double r = 0.0;
  for (std::size_t l = 0; l < bounds.size(); ++l) {
    const double noise = p.confidential[0][l] + p.confidential[1][l];
    r += detail::half_log2_gap(bounds.lo(user, l), p.common[l] + noise, noise);
  }
  return r;
}

inline double common_rate(const GainBounds& bounds, const PowerAllocation& p) {
  return std::min(common_rate_user(bounds, p, User::one), common_rate_user(bounds, p, User::two));
}

/// Secrecy rate of `user`'s confidential message, summed over the user's own
/// advantage set only. Throws if a set member with positive power has no
/// secrecy advantage (the partition does not belong to these bounds).
inline double confidential_rate(const GainBounds& bounds, const Partition& part, const PowerAllocation& p,
                                User user) {
  detail::check_shapes(bounds, p);
  detail::require(part.size() == bounds.size(), "rates: partition length does not match the gain bounds");
  const User eve = other(user);
  double r = 0.0;
  for (std::size_t l = 0; l < bounds.size(); ++l) {
    if (!part.in(advantage_of(user), l)) continue;
    const double x = p.conf(user, l);
    if (x == 0.0) continue;
    const double legit = bounds.lo(user, l);
    const double leak = bounds.hi(eve, l);
    if (legit < leak)
      throw InvalidArgument("rates: sub-channel " + std::to_string(l) + " is in S" + std::to_string(number(user)) +
                            " but has no secrecy advantage");
    r += 0.5 * (std::log1p(legit * x) - std::log1p(leak * x)) / numeric::ln2;
  }
  return r;
}

inline RateTriple rate_triple(const GainBounds& bounds, const Partition& part, const PowerAllocation& p) {
  return RateTriple{common_rate(bounds, p),
                    {confidential_rate(bounds, part, p, User::one), confidential_rate(bounds, part, p, User::two)}};
}

inline double weighted_sum(const Weights& w, const RateTriple& r) {
  return w.common * r.common + w.confidential[0] * r.confidential[0] + w.confidential[1] * r.confidential[1];
}

inline double weighted_sum_rate(const GainBounds& bounds, const Partition& part, const Weights& w,
                                const PowerAllocation& p) {
  return weighted_sum(w, rate_triple(bounds, part, p));
}

/// Sub-channels where confidential power is spent outside the owner's set.
/// Such power still counts against the budget and as common-message noise,
/// but never earns secrecy rate.
struct SetDisciplineReport {
  std::vector<std::size_t> wasted_user1;
  std::vector<std::size_t> wasted_user2;

  [[nodiscard]] bool ok() const noexcept { return wasted_user1.empty() && wasted_user2.empty(); }
};

inline SetDisciplineReport check_set_discipline(const Partition& part, const PowerAllocation& p) {
  detail::require(part.size() == p.size(), "set discipline: length mismatch");
  SetDisciplineReport rep;
  for (std::size_t l = 0; l < p.size(); ++l) {
    if (p.confidential[0][l] != 0.0 && !part.in(Advantage::user1, l)) rep.wasted_user1.push_back(l);
    if (p.confidential[1][l] != 0.0 && !part.in(Advantage::user2, l)) rep.wasted_user2.push_back(l);
  }
  return rep;
}

}  // namespace pbcc

#endif  // PBCC_RATES_HPP

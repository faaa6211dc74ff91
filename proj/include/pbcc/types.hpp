// SPDX-License-Identifier: Apache-2.0
//
// Core value types shared by every pbcc module: per-user containers, gain
// bounds, the sub-channel partition, weights, power allocations and rates.

#ifndef PBCC_TYPES_HPP
#define PBCC_TYPES_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbcc {

/// Raised on contract violations by the caller (bad shapes, signs, ranges).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative search cannot meet its postcondition.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class User : std::uint8_t { one = 0, two = 1 };

constexpr std::size_t index(User u) noexcept { return static_cast<std::size_t>(u); }
constexpr User other(User u) noexcept { return u == User::one ? User::two : User::one; }
constexpr int number(User u) noexcept { return static_cast<int>(u) + 1; }

template <class T>
using PerUser = std::array<T, 2>;

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail

/// Lower/upper channel power gains per user and sub-channel. The lower bound
/// is used where the user is the intended receiver, the upper bound where the
/// user is the eavesdropper.
struct GainBounds {
  PerUser<std::vector<double>> lower;
  PerUser<std::vector<double>> upper;

  [[nodiscard]] std::size_t size() const noexcept { return lower[0].size(); }

  [[nodiscard]] double lo(User u, std::size_t l) const { return lower[index(u)][l]; }
  [[nodiscard]] double hi(User u, std::size_t l) const { return upper[index(u)][l]; }

  /// Perfect CSIT: both bounds equal the known gains.
  static GainBounds perfect(PerUser<std::vector<double>> gains) {
    GainBounds b{gains, std::move(gains)};
    b.validate();
    return b;
  }

  void validate() const {
    const std::size_t n = lower[0].size();
    detail::require(n > 0, "gain bounds: at least one sub-channel required");
    for (std::size_t u = 0; u < 2; ++u) {
      detail::require(lower[u].size() == n && upper[u].size() == n,
                      "gain bounds: all rows must have the same length");
      for (std::size_t l = 0; l < n; ++l) {
        const double a = lower[u][l];
        const double b = upper[u][l];
        detail::require(std::isfinite(a) && std::isfinite(b), "gain bounds: non-finite entry");
        detail::require(a >= 0.0 && a <= b, "gain bounds: require 0 <= lower <= upper");
      }
    }
  }

  /// Same channel with the two users exchanged.
  [[nodiscard]] GainBounds swapped() const { return GainBounds{{lower[1], lower[0]}, {upper[1], upper[0]}}; }
};

/// Which user, if any, holds a guaranteed secrecy advantage on a sub-channel.
enum class Advantage : std::uint8_t { user1, user2, none };

constexpr Advantage advantage_of(User u) noexcept {
  return u == User::one ? Advantage::user1 : Advantage::user2;
}

struct Partition {
  std::vector<Advantage> label;

  [[nodiscard]] std::size_t size() const noexcept { return label.size(); }

  [[nodiscard]] bool in(Advantage a, std::size_t l) const { return label[l] == a; }

  [[nodiscard]] std::vector<std::size_t> members(Advantage a) const {
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < label.size(); ++l)
      if (label[l] == a) out.push_back(l);
    return out;
  }

  [[nodiscard]] Partition swapped() const {
    Partition p{label};
    for (auto& a : p.label) {
      if (a == Advantage::user1)
        a = Advantage::user2;
      else if (a == Advantage::user2)
        a = Advantage::user1;
    }
    return p;
  }
};

/// Strictly positive weights of the common and the two confidential rates.
struct Weights {
  double common = 1.0;
  PerUser<double> confidential{1.0, 1.0};

  Weights() = default;
  Weights(double w0, double w1, double w2) : common(w0), confidential{w1, w2} {}

  [[nodiscard]] double of(User u) const { return confidential[index(u)]; }

  void validate() const {
    for (double w : {common, confidential[0], confidential[1]})
      detail::require(std::isfinite(w) && w > 0.0, "weights must be finite and strictly positive");
  }

  [[nodiscard]] Weights scaled(double c) const {
    return Weights{common * c, confidential[0] * c, confidential[1] * c};
  }
  [[nodiscard]] Weights swapped() const { return Weights{common, confidential[1], confidential[0]}; }
};

/// Per-sub-channel powers of the common message and both confidential
/// messages under the total budget.
struct PowerAllocation {
  std::vector<double> common;
  PerUser<std::vector<double>> confidential;
  double budget = 0.0;

  static PowerAllocation zeros(std::size_t n, double budget) {
    return PowerAllocation{std::vector<double>(n, 0.0),
                           {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)},
                           budget};
  }

  [[nodiscard]] std::size_t size() const noexcept { return common.size(); }

  [[nodiscard]] double conf(User u, std::size_t l) const { return confidential[index(u)][l]; }

  [[nodiscard]] double subchannel_total(std::size_t l) const {
    return common[l] + confidential[0][l] + confidential[1][l];
  }

  [[nodiscard]] double total() const {
    double s = 0.0;
    for (std::size_t l = 0; l < common.size(); ++l) s += subchannel_total(l);
    return s;
  }

  [[nodiscard]] bool is_zero() const {
    for (std::size_t l = 0; l < common.size(); ++l)
      if (subchannel_total(l) != 0.0) return false;
    return true;
  }

  /// Checks shape, nonnegativity and the budget (with relative slack).
  void validate(std::size_t n, double rel_tol = 1e-9) const {
    detail::require(common.size() == n && confidential[0].size() == n && confidential[1].size() == n,
                    "power allocation: length mismatch with gain bounds");
    for (std::size_t l = 0; l < n; ++l)
      for (double p : {common[l], confidential[0][l], confidential[1][l]})
        detail::require(std::isfinite(p) && p >= 0.0, "power allocation: powers must be finite and >= 0");
    detail::require(std::isfinite(budget) && budget >= 0.0, "power allocation: budget must be >= 0");
    detail::require(total() <= budget * (1.0 + rel_tol) + 1e-300,
                    "power allocation: total power exceeds the budget");
  }

  [[nodiscard]] PowerAllocation swapped() const {
    return PowerAllocation{common, {confidential[1], confidential[0]}, budget};
  }
};

/// Achieved (R0, R1, R2) in bits per channel use.
struct RateTriple {
  double common = 0.0;
  PerUser<double> confidential{0.0, 0.0};

  [[nodiscard]] double of(User u) const { return confidential[index(u)]; }
};

}  // namespace pbcc

#endif  // PBCC_TYPES_HPP

// SPDX-License-Identifier: Apache-2.0
//
// Channel model with noisy transmitter-side estimates.
//
// Coefficients are real zero-mean Gaussian with per-sub-channel variance
// (the average SNR, since receiver noise has unit variance), so the power
// gain alpha = h^2 is exponential. The transmitter sees h_hat = h + eta with
// eta ~ N(0, sigma^2) and guards against estimation error through the
// epsilon / (1 - epsilon) quantiles of alpha given h_hat.

#ifndef PBCC_CHANNEL_HPP
#define PBCC_CHANNEL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "pbcc/numeric.hpp"
#include "pbcc/types.hpp"

namespace pbcc {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// A-priori coefficient variance per sub-channel for one user.
struct ChannelPrior {
  std::vector<double> variance;

  static ChannelPrior uniform(std::size_t n, double snr_db) {
    return ChannelPrior{std::vector<double>(n, db_to_linear(snr_db))};
  }

  [[nodiscard]] std::size_t size() const noexcept { return variance.size(); }

  void validate() const {
    detail::require(!variance.empty(), "channel prior: at least one sub-channel required");
    for (double v : variance)
      detail::require(std::isfinite(v) && v > 0.0, "channel prior: variances must be strictly positive");
  }
};

struct EstimationModel {
  double sigma = 0.0;    // estimation-noise standard deviation
  double epsilon = 0.05;  // per-bound outage threshold

  [[nodiscard]] bool perfect() const noexcept { return sigma == 0.0; }

  void validate() const {
    detail::require(std::isfinite(sigma) && sigma >= 0.0, "estimation model: sigma must be >= 0");
    detail::require(std::isfinite(epsilon) && epsilon >= 0.0 && epsilon < 0.5,
                    "estimation model: epsilon must lie in [0, 0.5)");
    detail::require(perfect() || epsilon > 0.0,
                    "estimation model: epsilon must be > 0 when sigma > 0 (unbounded support)");
  }
};

struct ChannelRealization {
  PerUser<std::vector<double>> h;
  PerUser<std::vector<double>> h_hat;

  [[nodiscard]] PerUser<std::vector<double>> true_gains() const {
    PerUser<std::vector<double>> g{h[0], h[1]};
    for (auto& row : g)
      for (double& x : row) x *= x;
    return g;
  }
};

namespace detail {

inline double gaussian_pdf(double x, double variance) {
  return std::exp(-0.5 * x * x / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

// Integrand of the conditional CDF after the substitution a = t^2:
// f(t^2 | h_hat) * 2t, which removes the a^{-1/2} singularity at the origin.
struct SubstitutedDensity {
  double prior_variance;
  double noise_variance;
  double h_hat;
  double evidence;  // (f_h conv f_eta)(h_hat)

  double operator()(double t) const {
    return (gaussian_pdf(h_hat - t, noise_variance) * gaussian_pdf(t, prior_variance) +
            gaussian_pdf(h_hat + t, noise_variance) * gaussian_pdf(-t, prior_variance)) /
           evidence;
  }
};

// Location and width of the posterior mass of h, used only to place
// quadrature breakpoints and bracket the quantile search.
struct PeakLocation {
  double center;
  double width;
};

inline PeakLocation peak_location(double prior_variance, double noise_variance, double h_hat) {
  const double total = prior_variance + noise_variance;
  return {std::abs(h_hat) * prior_variance / total, std::sqrt(prior_variance * noise_variance / total)};
}

class ConditionalGainCdf {
 public:
  ConditionalGainCdf(double prior_variance, const EstimationModel& model, double h_hat)
      : density_{prior_variance, model.sigma * model.sigma, h_hat,
                 gaussian_pdf(h_hat, prior_variance + model.sigma * model.sigma)},
        peak_(peak_location(prior_variance, model.sigma * model.sigma, h_hat)) {
    for (int k = -12; k <= 12; ++k) breaks_[static_cast<std::size_t>(k + 12)] = peak_.center + k * peak_.width;
  }

  // P(alpha <= t^2 | h_hat) for t >= 0.
  [[nodiscard]] double at_root(double t) const {
    if (t <= 0.0) return 0.0;
    return clamp01(integrate(0.0, t));
  }

  [[nodiscard]] double density_at_root(double t) const { return density_(t); }

  [[nodiscard]] const PeakLocation& peak() const noexcept { return peak_; }

  // Smallest t with P(alpha <= t^2) = q, by safeguarded Newton on t. The CDF
  // is carried along incrementally between iterates.
  [[nodiscard]] double quantile_root(double q) const {
    double lo = 0.0;
    double hi = peak_.center + 40.0 * peak_.width;
    double t = std::max(peak_.center, 0.5 * peak_.width);
    double ft = integrate(0.0, t);
    for (int it = 0; it < 200; ++it) {
      const double f = ft - q;
      if (std::abs(f) <= kProbabilityTol) return t;
      (f < 0.0 ? lo : hi) = t;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) return t;
      const double g = density_(t);
      double next = g > 0.0 ? t - f / g : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      ft += next > t ? integrate(t, next) : -integrate(next, t);
      t = next;
    }
    return t;
  }

  static constexpr double kProbabilityTol = 1e-10;

 private:
  static double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

  [[nodiscard]] double integrate(double a, double b) const {
    return numeric::adaptive_simpson_split(density_, a, b, breaks_, 1e-13);
  }

 private:
  SubstitutedDensity density_;
  PeakLocation peak_;
  std::array<double, 25> breaks_{};
};

}  // namespace detail

/// Conditional pdf of the gain alpha given the estimate h_hat, evaluated
/// directly from the Bayes form with Gaussian prior and estimation noise.
/// Diverges like a^{-1/2} at the origin (returns +inf at a = 0).
inline double conditional_gain_density(double prior_variance, const EstimationModel& model, double h_hat,
                                       double a) {
  model.validate();
  detail::require(model.sigma > 0.0, "conditional density: sigma = 0 is a point mass, use the deterministic case");
  detail::require(prior_variance > 0.0, "conditional density: prior variance must be > 0");
  detail::require(std::isfinite(h_hat), "conditional density: non-finite estimate");
  detail::require(a >= 0.0, "conditional density: a must be >= 0");
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  const double noise_var = model.sigma * model.sigma;
  const double r = std::sqrt(a);
  const double num = detail::gaussian_pdf(h_hat - r, noise_var) * detail::gaussian_pdf(r, prior_variance) +
                     detail::gaussian_pdf(h_hat + r, noise_var) * detail::gaussian_pdf(-r, prior_variance);
  return num / (2.0 * r * detail::gaussian_pdf(h_hat, prior_variance + noise_var));
}

/// P(alpha <= a | h_hat) by quadrature of the conditional density.
inline double conditional_gain_cdf(double prior_variance, const EstimationModel& model, double h_hat, double a) {
  model.validate();
  detail::require(model.sigma > 0.0, "conditional cdf: sigma must be > 0");
  detail::require(prior_variance > 0.0 && std::isfinite(h_hat) && a >= 0.0, "conditional cdf: invalid arguments");
  return detail::ConditionalGainCdf(prior_variance, model, h_hat).at_root(std::sqrt(a));
}

struct GainInterval {
  double lower;
  double upper;
};

/// epsilon and (1 - epsilon) quantiles of alpha given h_hat; both collapse
/// to h_hat^2 under perfect estimation.
inline GainInterval margin_bounds(double prior_variance, const EstimationModel& model, double h_hat) {
  model.validate();
  detail::require(std::isfinite(h_hat), "gain bounds: non-finite channel estimate");
  detail::require(std::isfinite(prior_variance) && prior_variance > 0.0, "gain bounds: prior variance must be > 0");
  if (model.perfect()) return {h_hat * h_hat, h_hat * h_hat};
  const detail::ConditionalGainCdf cdf(prior_variance, model, h_hat);
  const double lo = cdf.quantile_root(model.epsilon);
  const double hi = cdf.quantile_root(1.0 - model.epsilon);
  return {lo * lo, hi * hi};
}

inline GainBounds gain_bounds(const PerUser<ChannelPrior>& prior, const EstimationModel& model,
                              const PerUser<std::vector<double>>& h_hat) {
  model.validate();
  const std::size_t n = h_hat[0].size();
  GainBounds out;
  for (std::size_t u = 0; u < 2; ++u) {
    prior[u].validate();
    detail::require(prior[u].size() == n && h_hat[u].size() == n, "gain bounds: shape mismatch");
    out.lower[u].resize(n);
    out.upper[u].resize(n);
    for (std::size_t l = 0; l < n; ++l) {
      const GainInterval g = margin_bounds(prior[u].variance[l], model, h_hat[u][l]);
      out.lower[u][l] = g.lower;
      out.upper[u][l] = std::max(g.lower, g.upper);
    }
  }
  out.validate();
  return out;
}

/// Draws true coefficients and their estimates. Standard normals are drawn in
/// a fixed order (all coefficients, then all estimation noise) and scaled
/// afterwards, so realizations at different SNRs share the same randomness.
inline ChannelRealization sample_realization(const PerUser<ChannelPrior>& prior, const EstimationModel& model,
                                             std::uint64_t seed) {
  model.validate();
  prior[0].validate();
  prior[1].validate();
  detail::require(prior[0].size() == prior[1].size(), "sampler: users must have the same number of sub-channels");
  const std::size_t n = prior[0].size();
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ChannelRealization r;
  for (std::size_t u = 0; u < 2; ++u) {
    r.h[u].resize(n);
    for (std::size_t l = 0; l < n; ++l) r.h[u][l] = std::sqrt(prior[u].variance[l]) * normal(gen);
  }
  for (std::size_t u = 0; u < 2; ++u) {
    r.h_hat[u].resize(n);
    for (std::size_t l = 0; l < n; ++l) {
      const double eta = normal(gen);
      r.h_hat[u][l] = model.perfect() ? r.h[u][l] : r.h[u][l] + model.sigma * eta;
    }
  }
  return r;
}

/// S1: user 1 keeps an advantage even against the most optimistic user-2
/// gain; S2 symmetric (tested only where S1 fails); the rest carry only the
/// common message.
inline Partition partition(const GainBounds& bounds) {
  bounds.validate();
  Partition p;
  p.label.resize(bounds.size());
  for (std::size_t l = 0; l < bounds.size(); ++l) {
    if (bounds.lo(User::one, l) > bounds.hi(User::two, l))
      p.label[l] = Advantage::user1;
    else if (bounds.lo(User::two, l) > bounds.hi(User::one, l))
      p.label[l] = Advantage::user2;
    else
      p.label[l] = Advantage::none;
  }
  return p;
}

}  // namespace pbcc

#endif  // PBCC_CHANNEL_HPP

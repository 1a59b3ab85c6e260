#pragma once

// Large-n decoupling limits of the pairwise mutual information, the
// mutual-information/covariance rate classification, and finite-n
// convergence-gap diagnostics comparing the exact values to their limits.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ordstat/continuous.hpp"
#include "ordstat/special.hpp"

namespace ordstat {

enum class AsymptoticCaseId { r_vs_max, r_vs_m, k_step, quantile_pair, quantile_vs_max };
enum class ScaleTag { none, n, n_squared };
enum class RateTag { none, n, n_squared, n_cubed };

inline const char* to_string(RateTag r) {
  switch (r) {
    case RateTag::none: return "none";
    case RateTag::n: return "n";
    case RateTag::n_squared: return "n-squared";
    case RateTag::n_cubed: return "n-cubed";
  }
  return "?";
}

// One of the five limit regimes, with its case-specific parameters and the
// normalization under which the limit is finite.
struct AsymptoticCase {
  AsymptoticCaseId id = AsymptoticCaseId::r_vs_max;
  std::int64_t r = 0;   // r_vs_max, r_vs_m
  std::int64_t m = 0;   // r_vs_m
  std::int64_t k = 0;   // k_step
  double alpha = 0.0;   // quantile_pair, quantile_vs_max
  double beta = 0.0;    // quantile_pair

  static AsymptoticCase r_vs_max(std::int64_t r) {
    if (r < 1) throw std::domain_error("r-vs-max: requires r >= 1");
    AsymptoticCase c;
    c.id = AsymptoticCaseId::r_vs_max;
    c.r = r;
    return c;
  }
  static AsymptoticCase r_vs_m(std::int64_t r, std::int64_t m) {
    if (r < 1 || r >= m) throw std::domain_error("r-vs-m: requires 1 <= r < m");
    AsymptoticCase c;
    c.id = AsymptoticCaseId::r_vs_m;
    c.r = r;
    c.m = m;
    return c;
  }
  static AsymptoticCase k_step(std::int64_t k) {
    if (k < 1) throw std::domain_error("k-step: requires k >= 1");
    AsymptoticCase c;
    c.id = AsymptoticCaseId::k_step;
    c.k = k;
    return c;
  }
  static AsymptoticCase quantile_pair(double alpha, double beta) {
    if (!(0.0 < alpha && alpha < beta && beta < 1.0))
      throw std::domain_error("quantile-pair: requires 0 < alpha < beta < 1");
    AsymptoticCase c;
    c.id = AsymptoticCaseId::quantile_pair;
    c.alpha = alpha;
    c.beta = beta;
    return c;
  }
  static AsymptoticCase quantile_vs_max(double alpha) {
    if (!(0.0 < alpha && alpha < 1.0))
      throw std::domain_error("quantile-vs-max: requires 0 < alpha < 1");
    AsymptoticCase c;
    c.id = AsymptoticCaseId::quantile_vs_max;
    c.alpha = alpha;
    return c;
  }

  // Normalization making the limit finite: n^2 I for r-vs-max, n I for
  // quantile-vs-max, unscaled I elsewhere.
  ScaleTag scale() const {
    switch (id) {
      case AsymptoticCaseId::r_vs_max: return ScaleTag::n_squared;
      case AsymptoticCaseId::quantile_vs_max: return ScaleTag::n;
      default: return ScaleTag::none;
    }
  }
};

// lim n^2 I(X_(r); X_(n)) = r/2.
inline double limit_r_vs_max(std::int64_t r) {
  if (r < 1) throw std::domain_error("limit_r_vs_max: requires r >= 1");
  return static_cast<double>(r) / 2.0;
}

// lim I(X_(r); X_(m)) = T_{m-1} - T_{m-r-1} + (1+gamma) r  (fixed r < m).
inline double limit_fixed_pair(std::int64_t r, std::int64_t m,
                               const TSeqContext& ts = default_context()) {
  if (r < 1 || r >= m) throw std::domain_error("limit_fixed_pair: requires 1 <= r < m");
  const detail::DoubleDouble v = detail::add(
      ts.t_diff_dd(m - 1, m - r - 1),
      detail::mul(detail::dd_one_plus_gamma, static_cast<double>(r)));
  return v.to_double();
}

// lim I(X_(n-k); X_(n)) = log(k) - H_{k-1} + gamma.
inline double limit_k_step(std::int64_t k, const TSeqContext& ts = default_context()) {
  if (k < 1) throw std::domain_error("limit_k_step: requires k >= 1");
  detail::DoubleDouble v = detail::dd_log(static_cast<double>(k));
  v = detail::sub(v, ts.harmonic_dd(k - 1));
  v = detail::add(v, detail::dd_gamma);
  return v.to_double();
}

// lim I(X_(floor(alpha n)); X_(ceil(beta n))) = log(beta(1-alpha)/(beta-alpha))/2.
inline double limit_quantile_pair(double alpha, double beta) {
  if (!(0.0 < alpha && alpha < beta && beta < 1.0))
    throw std::domain_error("limit_quantile_pair: requires 0 < alpha < beta < 1");
  return 0.5 * std::log(beta * (1.0 - alpha) / (beta - alpha));
}

// lim n I(X_(floor(alpha n)); X_(n)) = alpha / (2(1-alpha)).
inline double limit_quantile_vs_max(double alpha) {
  if (!(0.0 < alpha && alpha < 1.0))
    throw std::domain_error("limit_quantile_vs_max: requires 0 < alpha < 1");
  return alpha / (2.0 * (1.0 - alpha));
}

inline double limit_of(const AsymptoticCase& c, const TSeqContext& ts = default_context()) {
  switch (c.id) {
    case AsymptoticCaseId::r_vs_max: return limit_r_vs_max(c.r);
    case AsymptoticCaseId::r_vs_m: return limit_fixed_pair(c.r, c.m, ts);
    case AsymptoticCaseId::k_step: return limit_k_step(c.k, ts);
    case AsymptoticCaseId::quantile_pair: return limit_quantile_pair(c.alpha, c.beta);
    case AsymptoticCaseId::quantile_vs_max: return limit_quantile_vs_max(c.alpha);
  }
  throw std::domain_error("limit_of: unknown case");
}

struct DecouplingRate {
  RateTag mi = RateTag::none;
  RateTag covariance = RateTag::none;
};

// Rate classification: the covariance and the mutual information never
// decouple at the same rate, and the MI keeps a positive limit in the three
// middle regimes.
inline DecouplingRate decoupling_rate(const AsymptoticCase& c) {
  switch (c.id) {
    case AsymptoticCaseId::r_vs_max: return {RateTag::n_squared, RateTag::n_cubed};
    case AsymptoticCaseId::r_vs_m: return {RateTag::none, RateTag::n_squared};
    case AsymptoticCaseId::k_step: return {RateTag::none, RateTag::n_squared};
    case AsymptoticCaseId::quantile_pair: return {RateTag::none, RateTag::n};
    case AsymptoticCaseId::quantile_vs_max: return {RateTag::n, RateTag::n_squared};
  }
  throw std::domain_error("decoupling_rate: unknown case");
}

namespace detail {

// (r_n, m_n) realized by a regime at sample size n.  Throws when n is too
// small for the indices to be valid; small-n cases are rejected, not clamped,
// so the estimand is never silently changed.
inline std::pair<std::int64_t, std::int64_t> case_indices(const AsymptoticCase& c,
                                                          std::int64_t n) {
  std::int64_t r = 0, m = 0;
  switch (c.id) {
    case AsymptoticCaseId::r_vs_max:
      r = c.r;
      m = n;
      break;
    case AsymptoticCaseId::r_vs_m:
      r = c.r;
      m = c.m;
      break;
    case AsymptoticCaseId::k_step:
      r = n - c.k;
      m = n;
      break;
    case AsymptoticCaseId::quantile_pair:
      r = static_cast<std::int64_t>(std::floor(c.alpha * static_cast<double>(n)));
      m = static_cast<std::int64_t>(std::ceil(c.beta * static_cast<double>(n)));
      break;
    case AsymptoticCaseId::quantile_vs_max:
      r = static_cast<std::int64_t>(std::floor(c.alpha * static_cast<double>(n)));
      m = n;
      break;
  }
  if (r < 1 || m <= r || m > n)
    throw std::domain_error("convergence_table: n too small for this case");
  return {r, m};
}

}  // namespace detail

struct ConvergenceRow {
  std::int64_t n = 0;
  double scaled_exact = 0.0;
  double limit = 0.0;
  double gap = 0.0;
};

// Exact scaled MI versus the limit across the requested sample sizes.
inline std::vector<ConvergenceRow> convergence_table(
    const AsymptoticCase& c, std::span<const std::int64_t> n_values,
    const TSeqContext& ts = default_context()) {
  const double lim = limit_of(c, ts);
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_values.size());
  for (const std::int64_t n : n_values) {
    const auto [r, m] = detail::case_indices(c, n);
    double scaled = mi_pair(n, r, m, ts).value;
    switch (c.scale()) {
      case ScaleTag::n: scaled *= static_cast<double>(n); break;
      case ScaleTag::n_squared:
        scaled *= static_cast<double>(n) * static_cast<double>(n);
        break;
      case ScaleTag::none: break;
    }
    rows.push_back({n, scaled, lim, std::fabs(scaled - lim)});
  }
  return rows;
}

}  // namespace ordstat

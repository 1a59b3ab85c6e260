#pragma once

// Scalar building blocks for the order-statistics information measures:
// harmonic numbers H_k, log-factorials, the sequence T_k = log(k!) - k*H_k,
// its first differences, certified asymptotic brackets for both, and the
// digamma function.
//
// Everything downstream subtracts T values of size O(n) to produce answers
// as small as O(1/n^2), so T and H are maintained in double-double precision
// and differences are taken before rounding.  T_k itself is accumulated from
// the exactly-conditioned step identity T_{k+1} - T_k = log(k+1) - H_k - 1
// rather than by forming log(k!) and k*H_k separately.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordstat/double_double.hpp"

namespace ordstat {

inline constexpr double euler_gamma = 0.5772156649015328606065120900824024;

// A value with certified lower/upper bounds, lo <= value <= hi.
struct BracketedValue {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Digamma via the recurrence psi(x) = psi(x+1) - 1/x to shift the argument
// above 10, then the Bernoulli-number asymptotic series.  Absolute error is
// below 1e-14 on (0, inf).
inline double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // -B_{2j}/(2j) coefficients of x^{-2j}
  double series = -1.0 / 12.0;
  series += inv2 * (1.0 / 120.0);
  series += inv2 * inv2 * (-1.0 / 252.0);
  series += inv2 * inv2 * inv2 * (1.0 / 240.0);
  double p8 = inv2 * inv2;
  p8 *= p8;
  series += p8 * (-1.0 / 132.0);
  series += p8 * inv2 * (691.0 / 32760.0);
  series += p8 * inv2 * inv2 * (-1.0 / 12.0);
  return acc + std::log(x) - 0.5 * inv + series * inv2;
}

// log(k!) without a context: small k from a table, large k by the
// Stirling series with the 1/(12k) - 1/(360k^3) + 1/(1260k^5) correction.
inline double log_factorial(std::int64_t k) {
  if (k < 0) throw std::domain_error("log_factorial: requires k >= 0");
  static const std::vector<double> table = [] {
    std::vector<double> t(4097);
    detail::DoubleDouble acc{0.0};
    t[0] = 0.0;
    for (std::int64_t j = 1; j < static_cast<std::int64_t>(t.size()); ++j) {
      acc = detail::add(acc, detail::dd_log(static_cast<double>(j)));
      t[j] = acc.to_double();
    }
    return t;
  }();
  if (k < static_cast<std::int64_t>(table.size())) return table[k];
  const double kk = static_cast<double>(k);
  const double inv = 1.0 / kk;
  const double inv2 = inv * inv;
  const double corr = inv / 12.0 - inv * inv2 / 360.0 + inv * inv2 * inv2 / 1260.0;
  return 0.5 * std::log(2.0 * M_PI * kk) + kk * std::log(kk) - kk + corr;
}

namespace detail {

// e(k) bounds from the DeTemple harmonic-number and Robbins-Stirling error
// terms:  k/(24(k+1)^2) - 1/(12k) <= e(k) <= 1/(24k) - 1/(12k+1).
inline DoubleDouble e_bound_lo(std::int64_t k) {
  const double kd = static_cast<double>(k);
  const DoubleDouble a = div(DoubleDouble{kd}, mul(DoubleDouble{24.0 * (kd + 1.0)}, kd + 1.0));
  return sub(a, reciprocal(12.0 * kd));
}
inline DoubleDouble e_bound_hi(std::int64_t k) {
  const double kd = static_cast<double>(k);
  return sub(reciprocal(24.0 * kd), reciprocal(12.0 * kd + 1.0));
}

// c(k) bounds: 1/(24(k+2)^2) <= c(k) <= 1/(24(k+1)^2).
inline DoubleDouble c_bound_lo(std::int64_t k) {
  const double kd = static_cast<double>(k);
  return div(DoubleDouble{1.0}, mul(DoubleDouble{24.0 * (kd + 2.0)}, kd + 2.0));
}
inline DoubleDouble c_bound_hi(std::int64_t k) {
  const double kd = static_cast<double>(k);
  return div(DoubleDouble{1.0}, mul(DoubleDouble{24.0 * (kd + 1.0)}, kd + 1.0));
}

// Main terms of the two expansions, before the e(k)/c(k) remainders.
// t_main(k)     = k log(2k/(2k+1)) + log(2 pi k)/2 - (1+gamma) k
// t_step_main(k)= log((2k+2)/(2k+3)) - (1+gamma) + 1/(k+1)
inline DoubleDouble t_main(std::int64_t k) {
  const double kd = static_cast<double>(k);
  const DoubleDouble log_ratio = sub(dd_log(2.0 * kd), dd_log(2.0 * kd + 1.0));
  DoubleDouble v = mul(log_ratio, kd);
  v = add(v, mul(dd_log(mul(dd_two_pi, kd)), 0.5));
  return sub(v, mul(dd_one_plus_gamma, kd));
}
inline DoubleDouble t_step_main(std::int64_t k) {
  const double kd = static_cast<double>(k);
  DoubleDouble v = sub(dd_log(2.0 * kd + 2.0), dd_log(2.0 * kd + 3.0));
  v = sub(v, dd_one_plus_gamma);
  return add(v, reciprocal(kd + 1.0));
}

// Slack absorbing the (tiny) double-double evaluation error of the bracket
// endpoints before they are rounded outward.
inline double bracket_slack(const DoubleDouble& v) {
  return 1e-25 * (1.0 + std::fabs(v.hi));
}

// Expansion midpoint of T_k, kept in double-double so that differences of
// nearby midpoints cancel smoothly (the rounded bracket endpoints would
// inject ulp(T_k)-sized jitter).
inline DoubleDouble t_mid_dd(std::int64_t k) {
  const DoubleDouble e_mid = mul(add(e_bound_lo(k), e_bound_hi(k)), 0.5);
  return sub(t_main(k), e_mid);
}

inline BracketedValue make_bracket(const DoubleDouble& lo_dd, const DoubleDouble& hi_dd) {
  const double slack = std::max(bracket_slack(lo_dd), bracket_slack(hi_dd));
  BracketedValue b;
  b.lo = round_down(sub(lo_dd, slack));
  b.hi = round_up(add(hi_dd, slack));
  b.value = mul(add(lo_dd, hi_dd), 0.5).to_double();
  return b;
}

}  // namespace detail

// Lemma-style expansion of T_k with the e(k) remainder replaced by its
// certified bounds.  The returned interval is guaranteed to contain the
// exact T_k for every k >= 1.
inline BracketedValue t_approx(std::int64_t k) {
  if (k < 1) throw std::domain_error("t_approx: requires k >= 1");
  const detail::DoubleDouble base = detail::t_main(k);
  // T_k = base - e(k), so the upper endpoint uses the lower e bound.
  return detail::make_bracket(detail::sub(base, detail::e_bound_hi(k)),
                              detail::sub(base, detail::e_bound_lo(k)));
}

// Certified bracket for T_{k+1} - T_k from the step expansion with the c(k)
// remainder bounds.
inline BracketedValue t_step_approx(std::int64_t k) {
  if (k < 1) throw std::domain_error("t_step_approx: requires k >= 1");
  const detail::DoubleDouble base = detail::t_step_main(k);
  return detail::make_bracket(detail::sub(base, detail::c_bound_hi(k)),
                              detail::sub(base, detail::c_bound_lo(k)));
}

// Immutable cache of H_k, log(k!), and T_k for k <= max_exact_k, built once
// by compensated (double-double) accumulation.  Above the threshold, H falls
// back to the digamma identity and T to the certified expansion midpoint.
// All accessors are const and safe for concurrent use.
class TSeqContext {
 public:
  explicit TSeqContext(std::int64_t max_exact_k = 1'000'000) : max_k_(max_exact_k) {
    if (max_exact_k < 1) throw std::domain_error("TSeqContext: requires max_exact_k >= 1");
    h_.resize(max_k_ + 1);
    t_.resize(max_k_ + 1);
    logfact_.resize(max_k_ + 1);
    h_[0] = detail::DoubleDouble{0.0};
    t_[0] = detail::DoubleDouble{0.0};
    logfact_[0] = 0.0;
    detail::DoubleDouble lf{0.0};
    for (std::int64_t k = 1; k <= max_k_; ++k) {
      const detail::DoubleDouble logk = detail::dd_log(static_cast<double>(k));
      lf = detail::add(lf, logk);
      logfact_[k] = lf.to_double();
      // T_k = T_{k-1} + log(k) - H_{k-1} - 1
      t_[k] = detail::add(t_[k - 1], detail::sub(detail::sub(logk, h_[k - 1]), 1.0));
      h_[k] = detail::add(h_[k - 1], detail::reciprocal(static_cast<double>(k)));
    }
  }

  std::int64_t max_exact_k() const { return max_k_; }

  double harmonic(std::int64_t k) const {
    if (k < 0) throw std::domain_error("harmonic: requires k >= 0");
    if (k <= max_k_) return h_[k].to_double();
    return digamma(static_cast<double>(k) + 1.0) + euler_gamma;
  }

  double log_factorial(std::int64_t k) const {
    if (k < 0) throw std::domain_error("log_factorial: requires k >= 0");
    if (k <= max_k_) return logfact_[k];
    return ordstat::log_factorial(k);
  }

  double t_value(std::int64_t k) const {
    if (k < 0) throw std::domain_error("t_value: requires k >= 0");
    if (k <= max_k_) return t_[k].to_double();
    return detail::t_mid_dd(k).to_double();  // error < 1/(24k^2) out here
  }

  // T_{k+1} - T_k = log(k+1) - H_k - 1
  double t_step(std::int64_t k) const {
    if (k < 0) throw std::domain_error("t_step: requires k >= 0");
    return t_step_dd(k).to_double();
  }

  // --- double-double internals used by the divergence formulas ---

  detail::DoubleDouble harmonic_dd(std::int64_t k) const {
    if (k <= max_k_) return h_[k];
    return detail::DoubleDouble{digamma(static_cast<double>(k) + 1.0) + euler_gamma};
  }

  detail::DoubleDouble t_value_dd(std::int64_t k) const {
    if (k <= max_k_) return t_[k];
    return detail::t_mid_dd(k);
  }

  detail::DoubleDouble t_step_dd(std::int64_t k) const {
    const detail::DoubleDouble logk1 = detail::dd_log(static_cast<double>(k) + 1.0);
    return detail::sub(detail::sub(logk1, harmonic_dd(k)), 1.0);
  }

  // T_a - T_b.  Differencing the cached prefix values is algebraically the
  // telescoped sum of t_step over [b, a), so the relative error stays bounded
  // independent of the magnitudes of T_a and T_b.
  detail::DoubleDouble t_diff_dd(std::int64_t a, std::int64_t b) const {
    return detail::sub(t_value_dd(a), t_value_dd(b));
  }

  double t_diff(std::int64_t a, std::int64_t b) const { return t_diff_dd(a, b).to_double(); }

 private:
  std::int64_t max_k_;
  std::vector<detail::DoubleDouble> h_;
  std::vector<detail::DoubleDouble> t_;
  std::vector<double> logfact_;
};

// Shared instance at the default threshold; built on first use.
inline const TSeqContext& default_context() {
  static const TSeqContext ctx;
  return ctx;
}

// Context-free conveniences.
inline double harmonic(std::int64_t k, const TSeqContext& ts = default_context()) {
  return ts.harmonic(k);
}
inline double t_value(std::int64_t k, const TSeqContext& ts = default_context()) {
  return ts.t_value(k);
}
inline double t_step(std::int64_t k, const TSeqContext& ts = default_context()) {
  return ts.t_step(k);
}

}  // namespace ordstat

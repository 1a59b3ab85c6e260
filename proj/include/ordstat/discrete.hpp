#pragma once

// Mutual information between order statistics under discrete sampling
// distributions: the Bernoulli closed form, an exact finite-support
// computation through the quantile coupling, and the distribution-free
// upper-bound check against the continuous value.
//
// Conventions: 0*log(0) = 0 and 0*log(0/x) = 0 throughout, which is required
// once binomial tails underflow to floating-point zero at large n.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ordstat/continuous.hpp"
#include "ordstat/special.hpp"

namespace ordstat {

// Finite-support pmf over strictly increasing real support points.
struct DiscreteDist {
  std::vector<double> support;
  std::vector<double> probs;

  DiscreteDist(std::vector<double> s, std::vector<double> p)
      : support(std::move(s)), probs(std::move(p)) {
    if (support.empty() || support.size() != probs.size())
      throw std::domain_error("DiscreteDist: support/probs must be nonempty and equal-sized");
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (i > 0 && !(support[i] > support[i - 1]))
        throw std::domain_error("DiscreteDist: support must be strictly increasing");
      if (!(probs[i] > 0.0)) throw std::domain_error("DiscreteDist: probs must be > 0");
    }
    double sum = 0.0, comp = 0.0;
    for (const double p : probs) {
      const double t = sum + p;
      comp += std::fabs(sum) >= std::fabs(p) ? (sum - t) + p : (p - t) + sum;
      sum = t;
    }
    if (std::fabs(sum + comp - 1.0) > 1e-12)
      throw std::domain_error("DiscreteDist: probs must sum to 1 within 1e-12");
  }

  std::size_t size() const { return support.size(); }

  // Running cdf; the final entry is pinned to 1 so the top class of the
  // trinomial decomposition is exactly empty.
  std::vector<double> cdf() const {
    std::vector<double> f(size());
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      sum += probs[i];
      f[i] = sum;
    }
    f.back() = 1.0;
    return f;
  }

  static DiscreteDist bernoulli(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("bernoulli: requires p in (0,1)");
    return DiscreteDist({0.0, 1.0}, {1.0 - p, p});
  }
};

namespace detail {

struct ProbWithLog {
  double p = 0.0;
  double logp = -std::numeric_limits<double>::infinity();
};

// P(lo <= B <= hi) for B ~ Binomial(n, q), summed in log space so that
// far-tail masses keep full relative accuracy.
inline ProbWithLog binomial_range(std::int64_t n, double q, std::int64_t lo,
                                  std::int64_t hi) {
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, n);
  if (lo > hi) return {};
  if (q == 0.0) return lo == 0 ? ProbWithLog{1.0, 0.0} : ProbWithLog{};
  if (q == 1.0) return hi == n ? ProbWithLog{1.0, 0.0} : ProbWithLog{};

  const double logq = std::log(q);
  const double log1mq = std::log1p(-q);
  const double lfn = log_factorial(n);
  std::vector<double> logterms;
  logterms.reserve(hi - lo + 1);
  double max_term = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = lo; j <= hi; ++j) {
    const double lt = lfn - log_factorial(j) - log_factorial(n - j) +
                      static_cast<double>(j) * logq +
                      static_cast<double>(n - j) * log1mq;
    logterms.push_back(lt);
    max_term = std::max(max_term, lt);
  }
  if (max_term == -std::numeric_limits<double>::infinity()) return {};
  double sum = 0.0;
  for (const double lt : logterms) sum += std::exp(lt - max_term);
  const double logp = std::min(max_term + std::log(sum), 0.0);
  return {std::exp(logp), logp};
}

// x * y with the 0 * anything = 0 convention.
inline double zero_safe_mul(double x, double y) { return x == 0.0 ? 0.0 : x * y; }

}  // namespace detail

// P(B >= k) for B ~ Binomial(n, q); the smaller tail is the one summed, so
// both near-0 and near-1 results keep relative accuracy.
inline double binomial_tail(std::int64_t n, double q, std::int64_t k) {
  if (n < 1) throw std::domain_error("binomial_tail: requires n >= 1");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("binomial_tail: requires q in [0,1]");
  if (k < 0 || k > n + 1) throw std::domain_error("binomial_tail: requires 0 <= k <= n+1");
  if (k == 0) return 1.0;
  if (k == n + 1) return 0.0;
  if (static_cast<double>(k) > static_cast<double>(n) * q)
    return detail::binomial_range(n, q, k, n).p;
  return 1.0 - detail::binomial_range(n, q, 0, k - 1).p;
}

// I(X_(r); X_(m)) for Bernoulli(p) sampling, r < m, in terms of the tails of
// B ~ Binomial(n, 1-p):
//   a = P(B >= r), b = P(B >= m), d = a - b = P(r <= B < m)
//   I = -b log a + d log(d / (a (1-b))) - (1-a) log(1-b)
// Each of a, b, d, 1-a, 1-b is its own stable tail/range sum; a - b is never
// formed by subtraction.
inline double mi_bernoulli(std::int64_t n, double p, std::int64_t r, std::int64_t m) {
  if (n < 1) throw std::domain_error("mi_bernoulli: requires n >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("mi_bernoulli: requires p in (0,1)");
  if (r < 1 || r > m || m > n) throw std::domain_error("mi_bernoulli: requires 1 <= r <= m <= n");
  if (r == m)
    throw std::domain_error(
        "mi_bernoulli: r == m rejected (self-information is entropy, not handled here)");
  const double q = 1.0 - p;
  const auto a = detail::binomial_range(n, q, r, n);
  const auto b = detail::binomial_range(n, q, m, n);
  const auto d = detail::binomial_range(n, q, r, m - 1);
  const auto one_minus_a = detail::binomial_range(n, q, 0, r - 1);
  const auto one_minus_b = detail::binomial_range(n, q, 0, m - 1);

  // Logs of near-1 probabilities come from the small complement via log1p;
  // the logsumexp of the big side cannot resolve log(1 - tiny).
  const auto log_from = [](const detail::ProbWithLog& self, double complement) {
    return self.p <= 0.5 ? self.logp : std::log1p(-complement);
  };
  const double log_a = log_from(a, one_minus_a.p);
  const double log_d = log_from(d, one_minus_a.p + b.p);
  const double log_omb = log_from(one_minus_b, b.p);

  double mi = 0.0;
  mi -= detail::zero_safe_mul(b.p, log_a);
  mi += detail::zero_safe_mul(d.p, log_d - log_a - log_omb);
  mi -= detail::zero_safe_mul(one_minus_a.p, log_omb);
  return detail::clamp_nonnegative(mi, "mi_bernoulli");
}

// Closed form of I(X_(1); X_(n)) for Bernoulli(p), in p^n and (1-p)^n.
// Must agree with mi_bernoulli(n, p, 1, n); kept as the independent route.
inline double mi_min_max_bernoulli(std::int64_t n, double p) {
  if (n < 2) throw std::domain_error("mi_min_max_bernoulli: requires n >= 2");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("mi_min_max_bernoulli: requires p in (0,1)");
  const double nd = static_cast<double>(n);
  const double u = std::exp(nd * std::log(p));        // p^n
  const double v = std::exp(nd * std::log1p(-p));     // (1-p)^n
  const double big_a = -std::expm1(nd * std::log(p));     // 1 - p^n
  const double big_b = -std::expm1(nd * std::log1p(-p));  // 1 - (1-p)^n
  const double c = big_a - v;                              // 1 - p^n - (1-p)^n
  const double log_a = u > 0.5 ? std::log(big_a) : std::log1p(-u);
  const double log_b = v > 0.5 ? std::log(big_b) : std::log1p(-v);
  double mi = 0.0;
  mi -= detail::zero_safe_mul(v, log_a);
  mi -= detail::zero_safe_mul(u, log_b);
  mi += detail::zero_safe_mul(c, std::log(c) - log_a - log_b);
  return detail::clamp_nonnegative(mi, "mi_min_max_bernoulli");
}

// Exact joint pmf of (X_(r), X_(m)) on a K-point support.  Entries with
// i > j vanish since the order statistics are sorted.
struct JointPMF2 {
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t m = 0;
  std::size_t size = 0;
  std::vector<double> table;  // row-major: P(X_(r) = v_i, X_(m) = v_j)

  double at(std::size_t i, std::size_t j) const { return table[i * size + j]; }

  std::vector<double> marginal_r() const {
    std::vector<double> out(size, 0.0);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) out[i] += at(i, j);
    return out;
  }
  std::vector<double> marginal_m() const {
    std::vector<double> out(size, 0.0);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) out[j] += at(i, j);
    return out;
  }
};

namespace detail {

// Bivariate cdf cell P(X_(r) <= v_a, X_(m) <= v_b) for a <= b: trinomial sum
// over the counts in (-inf, v_a] and (v_a, v_b], requiring at least r in the
// first class and at least m in the first two combined.  O(n^2) per cell.
inline double joint_cdf_cell(std::int64_t n, std::int64_t r, std::int64_t m,
                             double f_low, double f_high) {
  const double mid = f_high - f_low;
  const double top = 1.0 - f_high;
  const double log_low = std::log(f_low);
  const double log_mid = mid > 0.0 ? std::log(mid) : 0.0;
  const double log_top = top > 0.0 ? std::log(top) : 0.0;
  const double lfn = log_factorial(n);
  double sum = 0.0, comp = 0.0;
  for (std::int64_t i = r; i <= n; ++i) {
    for (std::int64_t j = std::max<std::int64_t>(0, m - i); j <= n - i; ++j) {
      if (mid == 0.0 && j > 0) continue;
      const std::int64_t rest = n - i - j;
      if (top == 0.0 && rest > 0) continue;
      double lt = lfn - log_factorial(i) - log_factorial(j) - log_factorial(rest) +
                  static_cast<double>(i) * log_low;
      if (j > 0) lt += static_cast<double>(j) * log_mid;
      if (rest > 0) lt += static_cast<double>(rest) * log_top;
      const double term = std::exp(lt);
      const double t = sum + term;
      comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
  }
  return sum + comp;
}

}  // namespace detail

// Exact joint law of (X_(r), X_(m)) by 2-D finite differencing of the
// bivariate cdf.  O(K^2 n^2); fine at desk scale (n <= 1e3, K <= 1e2).
inline JointPMF2 joint_pmf2(std::int64_t n, const DiscreteDist& dist, std::int64_t r,
                            std::int64_t m) {
  if (n < 1) throw std::domain_error("joint_pmf2: requires n >= 1");
  if (r < 1 || r >= m || m > n) throw std::domain_error("joint_pmf2: requires 1 <= r < m <= n");
  const std::size_t k = dist.size();
  const std::vector<double> f = dist.cdf();

  // cdf grid; for a > b the event reduces to {X_(m) <= v_b}
  std::vector<double> g(k * k, 0.0);
  for (std::size_t b = 0; b < k; ++b) {
    for (std::size_t a = 0; a <= b; ++a)
      g[a * k + b] = detail::joint_cdf_cell(n, r, m, f[a], f[b]);
    for (std::size_t a = b + 1; a < k; ++a) g[a * k + b] = g[b * k + b];
  }

  JointPMF2 out;
  out.n = n;
  out.r = r;
  out.m = m;
  out.size = k;
  out.table.assign(k * k, 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      double cell = g[a * k + b];
      if (a > 0) cell -= g[(a - 1) * k + b];
      if (b > 0) cell -= g[a * k + b - 1];
      if (a > 0 && b > 0) cell += g[(a - 1) * k + b - 1];
      if (cell < -1e-12)
        throw std::runtime_error("joint_pmf2: negative cell after differencing");
      if (a > b || cell < 0.0) cell = 0.0;
      out.table[a * k + b] = cell;
      total += cell;
    }
  }
  if (std::fabs(total - 1.0) > 1e-10)
    throw std::runtime_error("joint_pmf2: cells do not sum to 1");
  return out;
}

// I(X_(r); X_(m)) for an arbitrary finite-support sampling distribution.
inline double mi_discrete_exact(std::int64_t n, const DiscreteDist& dist, std::int64_t r,
                                std::int64_t m) {
  if (dist.size() == 1) {
    if (r < 1 || r >= m || m > n)
      throw std::domain_error("mi_discrete_exact: requires 1 <= r < m <= n");
    return 0.0;  // degenerate support: both order statistics are constants
  }
  const JointPMF2 pmf = joint_pmf2(n, dist, r, m);
  const std::vector<double> pr = pmf.marginal_r();
  const std::vector<double> pm = pmf.marginal_m();
  double mi = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < pmf.size; ++i) {
    for (std::size_t j = 0; j < pmf.size; ++j) {
      const double p = pmf.at(i, j);
      if (p == 0.0) continue;
      const double term = p * (std::log(p) - std::log(pr[i]) - std::log(pm[j]));
      const double t = mi + term;
      comp += std::fabs(mi) >= std::fabs(term) ? (mi - t) + term : (term - t) + mi;
      mi = t;
    }
  }
  return detail::clamp_nonnegative(mi + comp, "mi_discrete_exact");
}

struct BoundCheck {
  bool holds = false;
  double margin = 0.0;  // continuous MI minus discrete MI
};

// Data-processing upper bound: the discrete MI never exceeds the
// distribution-free continuous value for the same (n, r, m).
inline BoundCheck check_upper_bound(std::int64_t n, const DiscreteDist& dist,
                                    std::int64_t r, std::int64_t m,
                                    const TSeqContext& ts = default_context()) {
  if (r < 1 || r >= m || m > n)
    throw std::domain_error("check_upper_bound: requires 1 <= r < m <= n");
  const double continuous = mi_pair(n, r, m, ts).value;
  const double discrete = mi_discrete_exact(n, dist, r, m);
  const double margin = continuous - discrete;
  return {margin >= -1e-10, margin};
}

}  // namespace ordstat

#pragma once

// Independent verification engines: deterministic quadrature of the uniform
// order-statistics MI integrand, exhaustive enumeration for small discrete
// cases, and seeded Monte-Carlo estimators for discrete MI and covariances.
// These deliberately avoid the closed-form machinery they corroborate: the
// quadrature works from the joint/marginal densities alone, and the samplers
// sort raw draws rather than using any Beta shortcut.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ordstat/continuous.hpp"
#include "ordstat/discrete.hpp"
#include "ordstat/quadrature.hpp"
#include "ordstat/rng.hpp"
#include "ordstat/special.hpp"

namespace ordstat {

enum class OracleKind { quadrature, enumeration, montecarlo };

inline const char* to_string(OracleKind k) {
  switch (k) {
    case OracleKind::quadrature: return "quadrature";
    case OracleKind::enumeration: return "enumeration";
    case OracleKind::montecarlo: return "montecarlo";
  }
  return "?";
}

// Side-by-side closed form versus oracle value.
struct OracleReport {
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  OracleKind oracle_kind = OracleKind::quadrature;
  std::int64_t effort = 0;  // function evaluations or samples
  std::optional<std::uint64_t> seed;
  std::optional<double> std_error;  // Monte-Carlo only
};

namespace detail {

inline OracleReport make_report(double closed_form, double oracle, OracleKind kind,
                                std::int64_t effort,
                                std::optional<std::uint64_t> seed = std::nullopt,
                                std::optional<double> std_error = std::nullopt) {
  OracleReport r;
  r.closed_form = closed_form;
  r.oracle = oracle;
  r.abs_diff = std::fabs(closed_form - oracle);
  r.rel_diff = r.abs_diff / std::max(std::fabs(closed_form), 1e-300);
  r.oracle_kind = kind;
  r.effort = effort;
  r.seed = seed;
  r.std_error = std_error;
  return r;
}

// Plug-in MI of a joint pmf table (row-major k x k), 0 log 0 = 0.
inline double mi_from_joint_table(const std::vector<double>& table, std::size_t k) {
  std::vector<double> pr(k, 0.0), pm(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      pr[i] += table[i * k + j];
      pm[j] += table[i * k + j];
    }
  double mi = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const double p = table[i * k + j];
      if (p <= 0.0) continue;
      const double term = p * (std::log(p) - std::log(pr[i]) - std::log(pm[j]));
      const double t = mi + term;
      comp += std::fabs(mi) >= std::fabs(term) ? (mi - t) + term : (term - t) + mi;
      mi = t;
    }
  return mi + comp;
}

}  // namespace detail

// Quadrature that ran out of budget before reaching the tolerance; the best
// estimate so far rides along.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate, std::int64_t evaluations)
      : std::runtime_error(what), best_estimate(best_estimate), evaluations(evaluations) {}
  double best_estimate;
  std::int64_t evaluations;
};

// Numerical check of the pairwise MI: integrates
//   f(x,y) log( f(x,y) / (f_r(x) f_m(y)) )
// over 0 < x < y < 1, where f is the bivariate density of (U_(r), U_(m)) and
// f_r, f_m the Beta marginals.  Nested tanh-sinh handles the endpoint
// singularities; evaluation budget defaults to 1e7.
inline OracleReport quad_mi_pair(std::int64_t n, std::int64_t r, std::int64_t m, double tol,
                                 const TSeqContext& ts = default_context(),
                                 std::int64_t eval_budget = 10'000'000) {
  if (!(tol > 0.0)) throw std::domain_error("quad_mi_pair: requires tol > 0");
  if (n < 2 || n > 12) throw std::domain_error("quad_mi_pair: requires 2 <= n <= 12");
  if (r < 1 || r >= m || m > n) throw std::domain_error("quad_mi_pair: requires 1 <= r < m <= n");

  const double log_c_joint = log_factorial(n) - log_factorial(r - 1) -
                             log_factorial(m - r - 1) - log_factorial(n - m);
  const double log_c_r = log_factorial(n) - log_factorial(r - 1) - log_factorial(n - r);
  const double log_c_m = log_factorial(n) - log_factorial(m - 1) - log_factorial(n - m);
  const double er1 = static_cast<double>(r - 1);
  const double emr = static_cast<double>(m - r - 1);
  const double enm = static_cast<double>(n - m);
  const double enr = static_cast<double>(n - r);
  const double em1 = static_cast<double>(m - 1);

  std::int64_t evals = 0;
  const double inner_tol = tol * 0.05;
  bool inner_ok = true;
  // distances to the integration rims keep the log factors accurate at the
  // boundary singularities: x = from0, y - x = to_y, 1 - y = to_one
  auto outer_f = [&](double y, double y_from0, double y_to1) {
    auto inner = detail::tanh_sinh(
        [&](double, double x_from0, double x_to_y) {
          ++evals;
          double log_f = log_c_joint;
          if (er1 != 0.0) log_f += er1 * std::log(x_from0);
          if (emr != 0.0) log_f += emr * std::log(x_to_y);
          if (enm != 0.0) log_f += enm * std::log(y_to1);
          double log_fr = log_c_r;
          if (er1 != 0.0) log_fr += er1 * std::log(x_from0);
          if (enr != 0.0) log_fr += enr * std::log(y_to1 + x_to_y);
          double log_fm = log_c_m;
          if (em1 != 0.0) log_fm += em1 * std::log(y_from0);
          if (enm != 0.0) log_fm += enm * std::log(y_to1);
          const double f = std::exp(log_f);
          return f == 0.0 ? 0.0 : f * (log_f - log_fr - log_fm);
        },
        0.0, y, inner_tol, 10);
    if (!inner.converged) inner_ok = false;
    return inner.value;
  };
  auto outer = detail::tanh_sinh(outer_f, 0.0, 1.0, tol, 10);

  const double closed = mi_pair(n, r, m, ts).value;
  if (!(outer.converged && inner_ok) || evals > eval_budget)
    throw QuadratureError("quad_mi_pair: did not converge within the evaluation budget",
                          outer.value, evals);
  return detail::make_report(closed, outer.value, OracleKind::quadrature, evals);
}

// Exhaustive enumeration of all K^n outcomes: each outcome is weighted by its
// product probability, sorted, and tallied into the joint pmf of
// (X_(r), X_(m)).  Feasible while K^n <= 1e7.
inline OracleReport enum_mi_discrete(std::int64_t n, const DiscreteDist& dist,
                                     std::int64_t r, std::int64_t m) {
  if (n < 1) throw std::domain_error("enum_mi_discrete: requires n >= 1");
  if (r < 1 || r >= m || m > n)
    throw std::domain_error("enum_mi_discrete: requires 1 <= r < m <= n");
  const std::size_t k = dist.size();
  double outcomes = 1.0;
  for (std::int64_t i = 0; i < n; ++i) {
    outcomes *= static_cast<double>(k);
    if (outcomes > 1e7)
      throw std::domain_error(
          "enum_mi_discrete: K^n exceeds the 1e7 enumeration budget; use mc_mi_discrete");
  }

  std::vector<double> table(k * k, 0.0), comp(k * k, 0.0);
  std::vector<std::int64_t> digits(n, 0);
  std::vector<std::int64_t> sorted(n);
  std::int64_t count = 0;
  while (true) {
    double prob = 1.0;
    for (std::int64_t i = 0; i < n; ++i) prob *= dist.probs[digits[i]];
    sorted.assign(digits.begin(), digits.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t cell = static_cast<std::size_t>(sorted[r - 1]) * k +
                             static_cast<std::size_t>(sorted[m - 1]);
    const double t = table[cell] + prob;
    comp[cell] += std::fabs(table[cell]) >= std::fabs(prob) ? (table[cell] - t) + prob
                                                            : (prob - t) + table[cell];
    table[cell] = t;
    ++count;

    std::int64_t pos = 0;
    while (pos < n && ++digits[pos] == static_cast<std::int64_t>(k)) {
      digits[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  for (std::size_t c = 0; c < table.size(); ++c) table[c] += comp[c];

  const double oracle = detail::mi_from_joint_table(table, k);
  const double closed = k == 1 ? 0.0 : mi_discrete_exact(n, dist, r, m);
  return detail::make_report(closed, oracle, OracleKind::enumeration, count);
}

// Plug-in Monte-Carlo estimate of the discrete MI with a 200-resample
// bootstrap standard error.  Streams are chunked a priori and the bootstrap
// resamples whole stream blocks, so identical RNGSpec gives bit-identical
// reports at any thread count.
inline OracleReport mc_mi_discrete(std::int64_t n, const DiscreteDist& dist, std::int64_t r,
                                   std::int64_t m, std::int64_t samples, RNGSpec rng) {
  if (n < 1) throw std::domain_error("mc_mi_discrete: requires n >= 1");
  if (r < 1 || r >= m || m > n)
    throw std::domain_error("mc_mi_discrete: requires 1 <= r < m <= n");
  if (samples < 1000) throw std::domain_error("mc_mi_discrete: requires samples >= 1e3");
  if (rng.stream_count < 1) throw std::domain_error("mc_mi_discrete: requires streams >= 1");

  const std::size_t k = dist.size();
  const std::vector<double> cdf = dist.cdf();
  const auto chunks = detail::stream_chunks(samples, rng.stream_count);
  std::vector<std::vector<std::int64_t>> stream_counts(
      rng.stream_count, std::vector<std::int64_t>(k * k, 0));

  detail::run_streams(rng.stream_count, [&](std::int64_t s) {
    detail::Xoshiro256pp gen(rng.seed, static_cast<std::uint64_t>(s));
    auto& counts = stream_counts[s];
    std::vector<std::int64_t> bins(k);
    for (std::int64_t it = 0; it < chunks[s]; ++it) {
      std::fill(bins.begin(), bins.end(), 0);
      for (std::int64_t i = 0; i < n; ++i) {
        const double u = gen.next_unit();
        std::size_t v = 0;
        while (v + 1 < k && u > cdf[v]) ++v;
        ++bins[v];
      }
      // r-th and m-th smallest via the bin counts
      std::int64_t seen = 0;
      std::size_t vr = 0, vm = 0;
      bool got_r = false, got_m = false;
      for (std::size_t v = 0; v < k && !(got_r && got_m); ++v) {
        seen += bins[v];
        if (!got_r && seen >= r) {
          vr = v;
          got_r = true;
        }
        if (!got_m && seen >= m) {
          vm = v;
          got_m = true;
        }
      }
      ++counts[vr * k + vm];
    }
  });

  std::vector<std::int64_t> total(k * k, 0);
  for (const auto& counts : stream_counts)
    for (std::size_t c = 0; c < total.size(); ++c) total[c] += counts[c];

  const double inv_n = 1.0 / static_cast<double>(samples);
  std::vector<double> table(k * k);
  for (std::size_t c = 0; c < table.size(); ++c)
    table[c] = static_cast<double>(total[c]) * inv_n;
  const double estimate = detail::mi_from_joint_table(table, k);

  // block bootstrap over the independent stream chunks
  constexpr int kResamples = 200;
  detail::Xoshiro256pp boot(rng.seed, static_cast<std::uint64_t>(rng.stream_count) + 1);
  std::vector<double> boot_mi(kResamples);
  std::vector<std::int64_t> resampled(k * k);
  for (int b = 0; b < kResamples; ++b) {
    std::fill(resampled.begin(), resampled.end(), 0);
    std::int64_t picked = 0;
    for (std::int64_t s = 0; s < rng.stream_count; ++s) {
      const std::size_t pick =
          static_cast<std::size_t>(boot.next() % static_cast<std::uint64_t>(rng.stream_count));
      for (std::size_t c = 0; c < resampled.size(); ++c)
        resampled[c] += stream_counts[pick][c];
      picked += chunks[pick];
    }
    const double inv_b = picked > 0 ? 1.0 / static_cast<double>(picked) : 0.0;
    for (std::size_t c = 0; c < table.size(); ++c)
      table[c] = static_cast<double>(resampled[c]) * inv_b;
    boot_mi[b] = detail::mi_from_joint_table(table, k);
  }
  double mean = 0.0;
  for (const double v : boot_mi) mean += v;
  mean /= kResamples;
  double var = 0.0;
  for (const double v : boot_mi) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / (kResamples - 1));

  const double closed = k == 1 ? 0.0 : mi_discrete_exact(n, dist, r, m);
  return detail::make_report(closed, estimate, OracleKind::montecarlo, samples, rng.seed, se);
}

enum class SamplingFamily { uniform, exponential };

// Monte-Carlo covariance of (X_(r), X_(m)) with a delete-one-block jackknife
// standard error, against the closed form.  The exponential family checks the
// (min, second-min) pair only, where the closed form is available.
inline OracleReport mc_covariance(SamplingFamily family, std::int64_t n, std::int64_t r,
                                  std::int64_t m, std::int64_t samples, RNGSpec rng,
                                  double lambda = 1.0) {
  if (n < 1) throw std::domain_error("mc_covariance: requires n >= 1");
  if (r < 1 || r > m || m > n) throw std::domain_error("mc_covariance: requires 1 <= r <= m <= n");
  if (samples < 1000) throw std::domain_error("mc_covariance: requires samples >= 1e3");
  if (rng.stream_count < 2) throw std::domain_error("mc_covariance: requires streams >= 2");
  double closed = 0.0;
  if (family == SamplingFamily::uniform) {
    closed = covariance_uniform(n, r, m);
  } else {
    if (r != 1 || m != 2)
      throw std::domain_error("mc_covariance: exponential check is for (r, m) = (1, 2)");
    closed = covariance_exponential_min2(n, lambda);
  }

  const auto chunks = detail::stream_chunks(samples, rng.stream_count);
  struct Sums {
    double sx = 0.0, sy = 0.0, sxy = 0.0;
  };
  std::vector<Sums> stream_sums(rng.stream_count);

  detail::run_streams(rng.stream_count, [&](std::int64_t s) {
    detail::Xoshiro256pp gen(rng.seed, static_cast<std::uint64_t>(s));
    std::vector<double> buf(n);
    Sums acc;
    for (std::int64_t it = 0; it < chunks[s]; ++it) {
      for (std::int64_t i = 0; i < n; ++i) {
        const double u = gen.next_unit();
        buf[i] = family == SamplingFamily::uniform ? u : -std::log(u) / lambda;
      }
      std::sort(buf.begin(), buf.end());
      const double x = buf[r - 1];
      const double y = buf[m - 1];
      acc.sx += x;
      acc.sy += y;
      acc.sxy += x * y;
    }
    stream_sums[s] = acc;
  });

  auto cov_of = [](const Sums& t, double count) {
    return (t.sxy - t.sx * t.sy / count) / (count - 1.0);
  };
  Sums total;
  for (const auto& s : stream_sums) {
    total.sx += s.sx;
    total.sy += s.sy;
    total.sxy += s.sxy;
  }
  const double estimate = cov_of(total, static_cast<double>(samples));

  // delete-one-block jackknife
  const std::int64_t blocks = rng.stream_count;
  std::vector<double> loo(blocks);
  double loo_mean = 0.0;
  for (std::int64_t s = 0; s < blocks; ++s) {
    const Sums rest{total.sx - stream_sums[s].sx, total.sy - stream_sums[s].sy,
                    total.sxy - stream_sums[s].sxy};
    loo[s] = cov_of(rest, static_cast<double>(samples - chunks[s]));
    loo_mean += loo[s];
  }
  loo_mean /= static_cast<double>(blocks);
  double var = 0.0;
  for (const double v : loo) var += (v - loo_mean) * (v - loo_mean);
  const double se =
      std::sqrt(var * static_cast<double>(blocks - 1) / static_cast<double>(blocks));

  return detail::make_report(closed, estimate, OracleKind::montecarlo, samples, rng.seed, se);
}

}  // namespace ordstat

#pragma once

// Exact distribution-free quantities for order statistics of samples with an
// invertible cdf, computed on the uniform coupling: subset KL divergence,
// pairwise and subset mutual information, the joint density of a subset of
// uniform order statistics, Beta log-expectations, and covariances.
// All KL/MI values are in nats.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ordstat/special.hpp"

namespace ordstat {

// A strictly increasing, nonempty subset of {1..n} selecting order-statistic
// indices.  The boundary convention i_0 = 0, i_{k+1} = n+1 (with coordinates
// pinned to 0 and 1) is applied where the joint density needs it.
struct IndexSet {
  std::int64_t n = 0;
  std::vector<std::int64_t> indices;

  IndexSet(std::int64_t sample_size, std::vector<std::int64_t> idx)
      : n(sample_size), indices(std::move(idx)) {
    if (n < 1) throw std::domain_error("IndexSet: requires n >= 1");
    if (indices.empty()) throw std::domain_error("IndexSet: requires a nonempty index list");
    for (std::size_t t = 0; t < indices.size(); ++t) {
      if (indices[t] < 1 || indices[t] > n)
        throw std::domain_error("IndexSet: indices must lie in [1, n]");
      if (t > 0 && indices[t] <= indices[t - 1])
        throw std::domain_error("IndexSet: indices must be strictly increasing");
    }
  }

  std::size_t size() const { return indices.size(); }
};

inline IndexSet index_union(const IndexSet& a, const IndexSet& b) {
  if (a.n != b.n) throw std::domain_error("index_union: sample sizes differ");
  std::vector<std::int64_t> u;
  std::set_union(a.indices.begin(), a.indices.end(), b.indices.begin(), b.indices.end(),
                 std::back_inserter(u));
  return IndexSet(a.n, std::move(u));
}

inline bool index_overlap(const IndexSet& a, const IndexSet& b) {
  std::vector<std::int64_t> i;
  std::set_intersection(a.indices.begin(), a.indices.end(), b.indices.begin(),
                        b.indices.end(), std::back_inserter(i));
  return !i.empty();
}

enum class MIMethod {
  closed_form,
  limit,
  oracle_quadrature,
  oracle_enumeration,
  oracle_montecarlo,
};

inline const char* to_string(MIMethod m) {
  switch (m) {
    case MIMethod::closed_form: return "closed-form";
    case MIMethod::limit: return "limit";
    case MIMethod::oracle_quadrature: return "oracle-quadrature";
    case MIMethod::oracle_enumeration: return "oracle-enumeration";
    case MIMethod::oracle_montecarlo: return "oracle-montecarlo";
  }
  return "?";
}

// Mutual information result.  value is +infinity exactly when the two index
// sets overlap; that outcome is semantic, not an overflow.
struct MIResult {
  double value = 0.0;
  MIMethod method = MIMethod::closed_form;
  std::string diagnostics;

  bool is_infinite() const { return std::isinf(value); }
};

namespace detail {

// Small negative results of provably nonnegative quantities are numerical
// dust; anything past the tolerance indicates a real defect.
inline double clamp_nonnegative(double v, const char* what) {
  if (v >= 0.0) return v;
  if (v > -1e-12) return 0.0;
  throw std::runtime_error(std::string(what) + ": internal consistency error, value " +
                           std::to_string(v));
}

// KL divergence of the joint law of U_(I) from the product of its marginals,
// as a double-double:
//   sum_{t=2..k} (T_{i_t-1} - T_{i_t-i_{t-1}-1}) + sum_{t=1..k-1} (T_{n-i_t} - T_n)
inline DoubleDouble kl_subset_dd(const IndexSet& idx, const TSeqContext& ts) {
  const auto& i = idx.indices;
  const std::size_t k = i.size();
  DoubleDouble acc{0.0};
  for (std::size_t t = 1; t < k; ++t)
    acc = add(acc, ts.t_diff_dd(i[t] - 1, i[t] - i[t - 1] - 1));
  for (std::size_t t = 0; t + 1 < k; ++t)
    acc = add(acc, ts.t_diff_dd(idx.n - i[t], idx.n));
  return acc;
}

}  // namespace detail

// D_KL(joint || product) for the selected uniform order statistics.  Zero for
// a singleton, where the joint and the product coincide.
inline double kl_subset(const IndexSet& idx, const TSeqContext& ts = default_context()) {
  return detail::clamp_nonnegative(detail::kl_subset_dd(idx, ts).to_double(), "kl_subset");
}

// Whole-sequence shortcut: 2 sum_{t=2..n} T_{t-1} - (n-1) T_n.
inline double kl_whole_sequence(std::int64_t n, const TSeqContext& ts = default_context()) {
  if (n < 1) throw std::domain_error("kl_whole_sequence: requires n >= 1");
  detail::DoubleDouble acc{0.0};
  for (std::int64_t t = 2; t <= n; ++t) acc = detail::add(acc, ts.t_value_dd(t - 1));
  acc = detail::mul(acc, 2.0);
  acc = detail::sub(acc, detail::mul(ts.t_value_dd(n), static_cast<double>(n - 1)));
  return detail::clamp_nonnegative(acc.to_double(), "kl_whole_sequence");
}

// Min-and-max shortcut: log((n-1)/n) + 1/(n-1).
inline double kl_min_max(std::int64_t n) {
  if (n < 2) throw std::domain_error("kl_min_max: requires n >= 2");
  const double nd = static_cast<double>(n);
  return std::log1p(-1.0 / nd) + 1.0 / (nd - 1.0);
}

// I(X_(r); X_(m)) = T_{m-1} + T_{n-r} - T_{m-r-1} - T_n for r < m, +infinity
// on overlap.  Symmetric in (r, m).
inline MIResult mi_pair(std::int64_t n, std::int64_t r, std::int64_t m,
                        const TSeqContext& ts = default_context()) {
  if (n < 1) throw std::domain_error("mi_pair: requires n >= 1");
  if (r < 1 || r > n || m < 1 || m > n)
    throw std::domain_error("mi_pair: requires indices in [1, n]");
  if (r == m)
    return MIResult{std::numeric_limits<double>::infinity(), MIMethod::closed_form,
                    "overlapping index sets"};
  if (r > m) std::swap(r, m);
  const detail::DoubleDouble v =
      detail::add(ts.t_diff_dd(m - 1, m - r - 1), ts.t_diff_dd(n - r, n));
  return MIResult{detail::clamp_nonnegative(v.to_double(), "mi_pair"), MIMethod::closed_form};
}

// I(X_(A); X_(B)) for disjoint subsets via the subset-KL decomposition
// I(A;B) = D(A u B) - D(A) - D(B); +infinity when the subsets overlap.
inline MIResult mi_subsets(const IndexSet& a, const IndexSet& b,
                           const TSeqContext& ts = default_context()) {
  if (a.n != b.n) throw std::domain_error("mi_subsets: sample sizes differ");
  if (index_overlap(a, b))
    return MIResult{std::numeric_limits<double>::infinity(), MIMethod::closed_form,
                    "overlapping index sets"};
  const IndexSet u = index_union(a, b);
  detail::DoubleDouble v = detail::kl_subset_dd(u, ts);
  v = detail::sub(v, detail::kl_subset_dd(a, ts));
  v = detail::sub(v, detail::kl_subset_dd(b, ts));
  return MIResult{detail::clamp_nonnegative(v.to_double(), "mi_subsets"),
                  MIMethod::closed_form};
}

// Joint density of the selected uniform order statistics at `point`:
//   c_I * prod_{t=1..k+1} (x_{i_t} - x_{i_{t-1}})^{i_t - i_{t-1} - 1}
// with x_{i_0} = 0 and x_{i_{k+1}} = 1, zero outside 0 < x_1 < ... < x_k < 1.
inline double joint_pdf_uniform(const IndexSet& idx, std::span<const double> point,
                                const TSeqContext& ts = default_context()) {
  const auto& i = idx.indices;
  const std::size_t k = i.size();
  if (point.size() != k)
    throw std::domain_error("joint_pdf_uniform: point dimension must equal |I|");
  for (std::size_t t = 0; t < k; ++t) {
    if (!(point[t] > 0.0 && point[t] < 1.0)) return 0.0;
    if (t > 0 && !(point[t] > point[t - 1])) return 0.0;
  }
  // log c_I = log n! - sum log (i_t - i_{t-1} - 1)!
  double logpdf = ts.log_factorial(idx.n);
  std::int64_t prev_index = 0;
  double prev_coord = 0.0;
  for (std::size_t t = 0; t <= k; ++t) {
    const std::int64_t cur_index = (t < k) ? i[t] : idx.n + 1;
    const double cur_coord = (t < k) ? point[t] : 1.0;
    const std::int64_t gap = cur_index - prev_index - 1;
    logpdf -= ts.log_factorial(gap);
    if (gap > 0) logpdf += static_cast<double>(gap) * std::log(cur_coord - prev_coord);
    prev_index = cur_index;
    prev_coord = cur_coord;
  }
  return std::exp(logpdf);
}

enum class BetaLogKind { log_u, log_one_minus_u, log_gap };

// Appendix-style Beta log-expectations for U_(m) ~ Beta(m, n+1-m):
//   E[log U_(m)]          = psi(m)     - psi(n+1)
//   E[log(1 - U_(m))]     = psi(n+1-m) - psi(n+1)
//   E[log(U_(m) - U_(r))] = psi(m-r)   - psi(n+1)   (1 <= r < m)
inline double beta_log_expectation(std::int64_t n, std::int64_t m, BetaLogKind kind,
                                   std::int64_t r = 0) {
  if (n < 1) throw std::domain_error("beta_log_expectation: requires n >= 1");
  if (m < 1 || m > n) throw std::domain_error("beta_log_expectation: requires 1 <= m <= n");
  const double psi_n1 = digamma(static_cast<double>(n) + 1.0);
  switch (kind) {
    case BetaLogKind::log_u:
      return digamma(static_cast<double>(m)) - psi_n1;
    case BetaLogKind::log_one_minus_u:
      return digamma(static_cast<double>(n + 1 - m)) - psi_n1;
    case BetaLogKind::log_gap:
      if (r < 1 || r >= m)
        throw std::domain_error("beta_log_expectation: log_gap requires 1 <= r < m");
      return digamma(static_cast<double>(m - r)) - psi_n1;
  }
  throw std::domain_error("beta_log_expectation: unknown kind");
}

// Cov(U_(r), U_(m)) = r (n-m+1) / ((n+1)^2 (n+2)) for 1 <= r <= m <= n.
inline double covariance_uniform(std::int64_t n, std::int64_t r, std::int64_t m) {
  if (n < 1 || r < 1 || r > m || m > n)
    throw std::domain_error("covariance_uniform: requires 1 <= r <= m <= n");
  const double nd = static_cast<double>(n);
  return static_cast<double>(r) * (nd - static_cast<double>(m) + 1.0) /
         ((nd + 1.0) * (nd + 1.0) * (nd + 2.0));
}

// Cov(X_(1), X_(2)) = 1/(lambda^2 n^2) for exponential sampling with rate
// lambda -- the standard witness that covariance, unlike the mutual
// information, depends on the sampling distribution.
inline double covariance_exponential_min2(std::int64_t n, double lambda) {
  if (n < 2) throw std::domain_error("covariance_exponential_min2: requires n >= 2");
  if (!(lambda > 0.0))
    throw std::domain_error("covariance_exponential_min2: requires lambda > 0");
  const double nd = static_cast<double>(n);
  return 1.0 / (lambda * lambda * nd * nd);
}

}  // namespace ordstat

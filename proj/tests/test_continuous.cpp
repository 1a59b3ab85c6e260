#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "doctest.h"
#include "ordstat/continuous.hpp"
#include "support/reference.hpp"

using namespace ordstat;

namespace {
const TSeqContext& ctx() {
  static const TSeqContext c(12'000);
  return c;
}
}  // namespace

TEST_CASE("IndexSet: validation") {
  CHECK_NOTHROW(IndexSet(5, {1, 3, 5}));
  CHECK_THROWS_AS(IndexSet(5, {}), std::domain_error);
  CHECK_THROWS_AS(IndexSet(5, {0, 2}), std::domain_error);
  CHECK_THROWS_AS(IndexSet(5, {2, 2}), std::domain_error);
  CHECK_THROWS_AS(IndexSet(5, {3, 2}), std::domain_error);
  CHECK_THROWS_AS(IndexSet(5, {1, 6}), std::domain_error);
}

TEST_CASE("kl_subset: pinned values") {
  CHECK(kl_subset(IndexSet(2, {1, 2}), ctx()) ==
        doctest::Approx(0.306852819440055).epsilon(1e-12));
  CHECK(kl_subset(IndexSet(9, {4}), ctx()) == 0.0);  // singleton
  CHECK(kl_subset(IndexSet(3, {1, 2, 3}), ctx()) ==
        doctest::Approx(3.0 - 2.0 * std::log(3.0)).epsilon(1e-13));
}

TEST_CASE("kl_whole_sequence: shortcut equals the general path") {
  CHECK(kl_whole_sequence(1, ctx()) == 0.0);
  CHECK(kl_whole_sequence(2, ctx()) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
  CHECK(kl_whole_sequence(3, ctx()) ==
        doctest::Approx(3.0 - 2.0 * std::log(3.0)).epsilon(1e-14));
  for (std::int64_t n = 1; n <= 100; ++n) {
    std::vector<std::int64_t> all(n);
    for (std::int64_t i = 0; i < n; ++i) all[i] = i + 1;
    CHECK(std::fabs(kl_whole_sequence(n, ctx()) - kl_subset(IndexSet(n, all), ctx())) < 1e-10);
  }
}

TEST_CASE("kl_min_max: shortcut, limit scaling, domain") {
  CHECK(kl_min_max(2) == doctest::Approx(1.0 + std::log(0.5)).epsilon(1e-14));
  CHECK(kl_min_max(10) == doctest::Approx(std::log(0.9) + 1.0 / 9.0).epsilon(1e-14));
  for (std::int64_t n = 2; n <= 100; ++n)
    CHECK(std::fabs(kl_min_max(n) - kl_subset(IndexSet(n, {1, n}), ctx())) < 1e-12);
  const double n = 1e4;
  CHECK(std::fabs(n * n * kl_min_max(10'000) - 0.5) < 1e-3);
  CHECK_THROWS_AS(kl_min_max(1), std::domain_error);
}

TEST_CASE("mi_pair: pinned figure values") {
  CHECK(mi_pair(2, 1, 2, ctx()).value == doctest::Approx(0.306852819440055).epsilon(1e-12));
  CHECK(mi_pair(50, 49, 50, ctx()).value ==
        doctest::Approx(0.567182332901297).epsilon(1e-12));
  // table value carries the source's own double rounding; 1e-9 is its bar
  CHECK(100.0 * mi_pair(100, 50, 100, ctx()).value ==
        doctest::Approx(0.502499875031504).epsilon(1e-9));
  CHECK(mi_pair(2, 1, 2, ctx()).method == MIMethod::closed_form);
}

TEST_CASE("mi_pair: overlap, symmetry, domain") {
  const MIResult overlap = mi_pair(5, 3, 3, ctx());
  CHECK(overlap.is_infinite());
  CHECK(overlap.value > 0.0);
  // exact symmetry: both orders take the identical sorted path
  CHECK(mi_pair(7, 2, 5, ctx()).value == mi_pair(7, 5, 2, ctx()).value);
  CHECK_THROWS_AS(mi_pair(5, 0, 3, ctx()), std::domain_error);
  CHECK_THROWS_AS(mi_pair(5, 1, 6, ctx()), std::domain_error);
}

TEST_CASE("mi_pair: nonnegative and decreasing along the chain") {
  for (std::int64_t n : {10, 25, 50}) {
    for (std::int64_t r = 1; r < n; ++r) {
      double prev = std::numeric_limits<double>::infinity();
      for (std::int64_t m = r + 1; m <= n; ++m) {
        const double v = mi_pair(n, r, m, ctx()).value;
        REQUIRE(v >= 0.0);
        REQUIRE(v < prev);  // data processing along the order-statistics chain
        prev = v;
      }
    }
  }
}

TEST_CASE("mi_subsets: singleton consistency with mi_pair") {
  for (std::int64_t n : {4, 9, 30}) {
    for (std::int64_t r = 1; r <= n; ++r) {
      for (std::int64_t m = r + 1; m <= n; ++m) {
        const double lhs = mi_subsets(IndexSet(n, {r}), IndexSet(n, {m}), ctx()).value;
        const double rhs = mi_pair(n, r, m, ctx()).value;
        REQUIRE(std::fabs(lhs - rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("mi_subsets: overlap is infinite, disjoint blocks are finite") {
  CHECK(mi_subsets(IndexSet(5, {1}), IndexSet(5, {1}), ctx()).is_infinite());
  CHECK(mi_subsets(IndexSet(5, {1, 3}), IndexSet(5, {3, 5}), ctx()).is_infinite());

  const double v = mi_subsets(IndexSet(4, {1, 2}), IndexSet(4, {3, 4}), ctx()).value;
  // hand value: kl({1,2,3,4}) - 2 kl({1,2}) = 7/3 - log 6
  CHECK(v == doctest::Approx(7.0 / 3.0 - std::log(6.0)).epsilon(1e-12));
  // Markov collapse: I({1,2};{3,4}) = I(2;3) for adjacent blocks
  CHECK(std::fabs(v - mi_pair(4, 2, 3, ctx()).value) < 1e-10);
  CHECK(v >= 0.0);
}

TEST_CASE("mi_subsets: nonnegativity on random disjoint subsets") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(gen() % 14);
    std::vector<std::int64_t> a, b;
    for (std::int64_t i = 1; i <= n; ++i) {
      switch (gen() % 3) {
        case 0: a.push_back(i); break;
        case 1: b.push_back(i); break;
        default: break;
      }
    }
    if (a.empty() || b.empty()) continue;
    const double v = mi_subsets(IndexSet(n, a), IndexSet(n, b), ctx()).value;
    REQUIRE(v >= -1e-12);
  }
}

TEST_CASE("joint_pdf_uniform: pinned values and support") {
  const IndexSet both(2, {1, 2});
  CHECK(joint_pdf_uniform(both, std::vector<double>{0.3, 0.7}, ctx()) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(joint_pdf_uniform(both, std::vector<double>{0.7, 0.3}, ctx()) == 0.0);
  CHECK(joint_pdf_uniform(both, std::vector<double>{-0.1, 0.5}, ctx()) == 0.0);
  CHECK(joint_pdf_uniform(both, std::vector<double>{0.5, 1.0}, ctx()) == 0.0);

  const IndexSet gap(3, {1, 3});
  CHECK(joint_pdf_uniform(gap, std::vector<double>{0.2, 0.9}, ctx()) ==
        doctest::Approx(4.2).epsilon(1e-13));

  CHECK_THROWS_AS(joint_pdf_uniform(gap, std::vector<double>{0.2}, ctx()),
                  std::domain_error);
}

TEST_CASE("joint_pdf_uniform: integrates to one for k <= 3") {
  struct Case {
    std::int64_t n;
    std::vector<std::int64_t> idx;
  };
  for (const Case& c : {Case{3, {2}}, Case{4, {1, 3}}, Case{5, {1, 3, 4}}, Case{4, {1, 2, 4}}}) {
    const IndexSet idx(c.n, c.idx);
    const int dim = static_cast<int>(c.idx.size());
    const double integral = testref::integrate_simplex(
        dim, [&](const std::vector<double>& x) { return joint_pdf_uniform(idx, x, ctx()); },
        1e-9);
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("beta_log_expectation: digamma identities") {
  CHECK(beta_log_expectation(1, 1, BetaLogKind::log_u) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(beta_log_expectation(2, 2, BetaLogKind::log_u) == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(beta_log_expectation(3, 2, BetaLogKind::log_gap, 1) ==
        doctest::Approx(-ctx().harmonic(3)).epsilon(1e-13));
  CHECK_THROWS_AS(beta_log_expectation(3, 4, BetaLogKind::log_u), std::domain_error);
  CHECK_THROWS_AS(beta_log_expectation(3, 2, BetaLogKind::log_gap, 2), std::domain_error);
  CHECK_THROWS_AS(beta_log_expectation(3, 2, BetaLogKind::log_gap, 0), std::domain_error);
}

TEST_CASE("beta_log_expectation: quadrature cross-check") {
  // E[log U_(m)] and E[log(1-U_(m))] against direct integration of the Beta
  // density, n = 4
  const std::int64_t n = 4;
  for (std::int64_t m = 1; m <= n; ++m) {
    const double log_c = log_factorial(n) - log_factorial(m - 1) - log_factorial(n - m);
    auto density = [&](double from, double to) {
      return std::exp(log_c + (m - 1) * std::log(from) + (n - m) * std::log(to));
    };
    const double e_log =
        ordstat::detail::tanh_sinh(
            [&](double, double from, double to) { return std::log(from) * density(from, to); },
            0.0, 1.0, 1e-11, 12)
            .value;
    const double e_log1m =
        ordstat::detail::tanh_sinh(
            [&](double, double from, double to) { return std::log(to) * density(from, to); },
            0.0, 1.0, 1e-11, 12)
            .value;
    CHECK(beta_log_expectation(n, m, BetaLogKind::log_u) ==
          doctest::Approx(e_log).epsilon(1e-8));
    CHECK(beta_log_expectation(n, m, BetaLogKind::log_one_minus_u) ==
          doctest::Approx(e_log1m).epsilon(1e-8));
  }
}

TEST_CASE("shared context is safe under concurrent readers") {
  std::vector<double> serial(8);
  for (int t = 0; t < 8; ++t)
    serial[t] = mi_pair(200, 10 + t, 150 + t, ctx()).value;
  std::vector<double> parallel(8);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t)
    pool.emplace_back(
        [&, t] { parallel[t] = mi_pair(200, 10 + t, 150 + t, ctx()).value; });
  for (auto& th : pool) th.join();
  for (int t = 0; t < 8; ++t) REQUIRE(parallel[t] == serial[t]);
}

TEST_CASE("covariance_uniform: pinned values, positivity, domain") {
  CHECK(covariance_uniform(1, 1, 1) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(covariance_uniform(3, 1, 3) == doctest::Approx(1.0 / 80.0).epsilon(1e-15));
  CHECK(covariance_uniform(10, 5, 5) == doctest::Approx(30.0 / 1452.0).epsilon(1e-15));
  for (std::int64_t n = 1; n <= 20; ++n)
    for (std::int64_t r = 1; r <= n; ++r)
      for (std::int64_t m = r; m <= n; ++m) REQUIRE(covariance_uniform(n, r, m) > 0.0);
  CHECK_THROWS_AS(covariance_uniform(5, 3, 2), std::domain_error);
  CHECK_THROWS_AS(covariance_uniform(5, 0, 2), std::domain_error);
}

TEST_CASE("covariance_exponential_min2: values and scaling") {
  CHECK(covariance_exponential_min2(2, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(covariance_exponential_min2(10, 1.0) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(covariance_exponential_min2(10, 2.0) == doctest::Approx(0.0025).epsilon(1e-15));
  for (double lambda : {0.5, 3.0}) {
    CHECK(covariance_exponential_min2(7, lambda) ==
          doctest::Approx(covariance_exponential_min2(7, 1.0) / (lambda * lambda))
              .epsilon(1e-13));
  }
  CHECK_THROWS_AS(covariance_exponential_min2(1, 1.0), std::domain_error);
  CHECK_THROWS_AS(covariance_exponential_min2(5, 0.0), std::domain_error);
}

#include <cmath>

#include "doctest.h"
#include "ordstat/special.hpp"
#include "support/reference.hpp"

using namespace ordstat;

namespace {
const TSeqContext& ctx() {
  static const TSeqContext c(20'000);
  return c;
}
}  // namespace

TEST_CASE("harmonic: small values") {
  CHECK(ctx().harmonic(0) == 0.0);
  CHECK(ctx().harmonic(1) == 1.0);
  CHECK(ctx().harmonic(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS(ctx().harmonic(-1), std::domain_error);
}

TEST_CASE("harmonic: strictly increasing") {
  double prev = ctx().harmonic(0);
  for (std::int64_t k = 1; k <= 5000; ++k) {
    const double h = ctx().harmonic(k);
    CHECK(h > prev);
    prev = h;
  }
}

TEST_CASE("harmonic: digamma identity above the exact threshold") {
  const TSeqContext small(100);
  // k = 1e6 goes through the digamma fallback in this context
  const std::int64_t k = 1'000'000;
  testref::DirectTSeq ref;
  while (ref.k() < k) ref.advance();
  CHECK(std::fabs(small.harmonic(k) - ref.harmonic().to_double()) < 1e-12);
  // cached and fallback paths agree where they overlap
  const TSeqContext big(2000);
  for (std::int64_t j : {101, 150, 999, 2000})
    CHECK(std::fabs(small.harmonic(j) - big.harmonic(j)) < 1e-12);
}

TEST_CASE("t_value: small values") {
  CHECK(ctx().t_value(0) == 0.0);
  CHECK(ctx().t_value(1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ctx().t_value(2) == doctest::Approx(std::log(2.0) - 3.0).epsilon(1e-15));
}

TEST_CASE("t_step: identity values and signs") {
  CHECK(ctx().t_step(0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(ctx().t_step(1) == doctest::Approx(std::log(2.0) - 2.0).epsilon(1e-15));
  // negative, strictly decreasing, bounded below by -(1+gamma)
  double prev = ctx().t_step(0);
  for (std::int64_t k = 1; k <= 5000; ++k) {
    const double s = ctx().t_step(k);
    CHECK(s < 0.0);
    CHECK(s < prev);
    CHECK(s > -(1.0 + euler_gamma));
    prev = s;
  }
}

TEST_CASE("t_step matches t_value differences for k <= 1e4") {
  const TSeqContext c(10'001);
  for (std::int64_t k = 1; k <= 10'000; ++k) {
    const double diff = c.t_value(k + 1) - c.t_value(k);
    CHECK(std::fabs(diff - c.t_step(k)) < 1e-10);
  }
}

TEST_CASE("t_step beyond the exact threshold agrees with direct summation") {
  const TSeqContext small(1000);
  const std::int64_t k = 1'000'000;
  testref::DirectTSeq ref;
  while (ref.k() < k) ref.advance();
  const double expected = ref.step_from_identity().to_double();
  CHECK(std::fabs(small.t_step(k) - expected) < 1e-12);
}

TEST_CASE("t_value above the threshold stays close to the exact sequence") {
  const TSeqContext small(1000);
  const TSeqContext big(6000);
  // above-threshold values come from the certified expansion midpoint,
  // good to the bracket halfwidth ~ 1/(24 k^2)
  for (std::int64_t k : {2000, 5000}) {
    const double kd = static_cast<double>(k);
    CHECK(std::fabs(small.t_value(k) - big.t_value(k)) < 1.0 / (12.0 * kd * kd));
  }
}

TEST_CASE("t_approx: brackets contain the exact value") {
  const BracketedValue b1 = t_approx(1);
  CHECK(b1.lo <= b1.value);
  CHECK(b1.value <= b1.hi);
  CHECK(b1.contains(-1.0));

  // k = 100: width bounded by the e(k) bound gap
  const BracketedValue b100 = t_approx(100);
  const double e_hi = 1.0 / 2400.0 - 1.0 / 1201.0;
  const double e_lo = 100.0 / (24.0 * 101.0 * 101.0) - 1.0 / 1200.0;
  CHECK(b100.width() <= (e_hi - e_lo) * (1.0 + 1e-12) + 1e-13);
  CHECK(b100.contains(ctx().t_value(100)));

  CHECK_THROWS_AS(t_approx(0), std::domain_error);
}

TEST_CASE("t_approx and t_step_approx: containment sweep k <= 2e4") {
  testref::DirectTSeq ref;
  using ordstat::detail::less_equal;
  using ordstat::detail::DoubleDouble;
  for (std::int64_t k = 1; k <= 20'000; ++k) {
    ref.advance();
    const BracketedValue bt = t_approx(k);
    const DoubleDouble t_exact = ref.t();
    REQUIRE(less_equal(DoubleDouble{bt.lo}, t_exact));
    REQUIRE(less_equal(t_exact, DoubleDouble{bt.hi}));

    const BracketedValue bs = t_step_approx(k);
    const DoubleDouble s_exact = ref.step_from_identity();
    REQUIRE(less_equal(DoubleDouble{bs.lo}, s_exact));
    REQUIRE(less_equal(s_exact, DoubleDouble{bs.hi}));

    // cached H and T agree with direct compensated summation
    REQUIRE(std::fabs(ctx().harmonic(k) - ref.harmonic().to_double()) < 1e-14);
    REQUIRE(std::fabs(ctx().t_value(k) - ref.t().to_double()) <
            1e-13 * std::max(1.0, std::fabs(ref.t().to_double())));
  }
}

TEST_CASE("t_approx: width at k = 1e5") {
  const BracketedValue b = t_approx(100'000);
  CHECK(b.width() < 2e-4);
  CHECK(b.width() > 0.0);
}

TEST_CASE("t_step_approx: width equals the c(k) bound gap") {
  const BracketedValue b10 = t_step_approx(10);
  const double expected = 1.0 / (24.0 * 121.0) - 1.0 / (24.0 * 144.0);
  CHECK(b10.width() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(b10.contains(ctx().t_step(10)));

  const BracketedValue b1 = t_step_approx(1);
  CHECK(b1.contains(std::log(2.0) - 2.0));

  CHECK(t_step_approx(10'000).width() < 1e-8);
  CHECK_THROWS_AS(t_step_approx(0), std::domain_error);
}

TEST_CASE("digamma: reference points") {
  CHECK(digamma(1.0) == doctest::Approx(-euler_gamma).epsilon(1e-14));
  CHECK(digamma(2.0) == doctest::Approx(1.0 - euler_gamma).epsilon(1e-14));
  CHECK(digamma(11.0) == doctest::Approx(ctx().harmonic(10) - euler_gamma).epsilon(1e-14));
  // psi(1/2) = -gamma - 2 log 2
  CHECK(digamma(0.5) ==
        doctest::Approx(-euler_gamma - 2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(digamma(-3.5), std::domain_error);
}

TEST_CASE("digamma: harmonic identity for integer arguments") {
  for (std::int64_t n = 1; n <= 10'000; ++n) {
    const double lhs = digamma(static_cast<double>(n));
    const double rhs = ctx().harmonic(n - 1) - euler_gamma;
    REQUIRE(std::fabs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("log_factorial: table and Stirling ranges agree") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(1) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  // across the table/Stirling boundary
  testref::DirectTSeq ref;
  while (ref.k() < 5000) ref.advance();
  CHECK(log_factorial(5000) ==
        doctest::Approx(ref.log_factorial().to_double()).epsilon(1e-14));
  CHECK(ctx().log_factorial(5000) ==
        doctest::Approx(ref.log_factorial().to_double()).epsilon(1e-14));
}

TEST_CASE("TSeqContext: construction guards") {
  CHECK_THROWS_AS(TSeqContext(0), std::domain_error);
  CHECK(TSeqContext(1).max_exact_k() == 1);
}

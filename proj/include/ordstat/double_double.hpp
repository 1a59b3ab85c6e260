#pragma once

// Double-double arithmetic: an unevaluated sum of two doubles giving ~31
// significant digits.  Error-free transformations follow Knuth / Dekker as
// compiled in Hida, Li & Bailey, "Library for Double-Double and Quad-Double
// Arithmetic" (the QD library).  Only the handful of operations the T-sequence
// machinery needs are provided; this is not a general multiprecision type.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ordstat::detail {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}
  constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

// s + err == a + b exactly.
inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Requires |a| >= |b| (or a == 0).
inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

// p + err == a * b exactly.
inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble add(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble add(const DoubleDouble& a, double b) {
  DoubleDouble s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble negate(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

inline DoubleDouble sub(const DoubleDouble& a, const DoubleDouble& b) {
  return add(a, negate(b));
}

inline DoubleDouble sub(const DoubleDouble& a, double b) { return add(a, -b); }

inline DoubleDouble mul(const DoubleDouble& a, const DoubleDouble& b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble mul(const DoubleDouble& a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble div(const DoubleDouble& a, const DoubleDouble& b) {
  const double q1 = a.hi / b.hi;
  DoubleDouble r = sub(a, mul(b, q1));
  const double q2 = r.hi / b.hi;
  r = sub(r, mul(b, q2));
  const double q3 = r.hi / b.hi;
  DoubleDouble q = quick_two_sum(q1, q2);
  return add(q, q3);
}

// 1/k to full double-double accuracy.
inline DoubleDouble reciprocal(double k) {
  const double r = 1.0 / k;
  const double err = std::fma(-r, k, 1.0) / k;
  return quick_two_sum(r, err);
}

inline bool less(const DoubleDouble& a, const DoubleDouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool less_equal(const DoubleDouble& a, const DoubleDouble& b) {
  return !less(b, a);
}

inline constexpr DoubleDouble dd_ln2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DoubleDouble dd_two_pi{6.283185307179586, 2.4492935982947064e-16};
inline constexpr DoubleDouble dd_gamma{0.5772156649015329, -4.942915152430645e-18};
inline constexpr DoubleDouble dd_one_plus_gamma{1.5772156649015328, 1.06079387310085e-16};

// Natural log of a positive double-double.  Argument reduction x = 2^e * m with
// m in [1/sqrt2, sqrt2), then the atanh series in t = (m-1)/(m+1); |t| is at
// most 0.1716 so ~24 terms reach 1e-33.
inline DoubleDouble dd_log(const DoubleDouble& x) {
  static const std::array<DoubleDouble, 25> coeff = [] {
    std::array<DoubleDouble, 25> c{};
    for (int j = 0; j < 25; ++j) c[j] = reciprocal(2.0 * j + 1.0);
    return c;
  }();

  int e = 0;
  const double f = std::frexp(x.hi, &e);  // f in [0.5, 1)
  if (f < 0.70710678118654752) e -= 1;
  const DoubleDouble m{std::ldexp(x.hi, -e), std::ldexp(x.lo, -e)};

  const DoubleDouble t = div(sub(m, 1.0), add(m, 1.0));
  const DoubleDouble t2 = mul(t, t);
  DoubleDouble s = coeff[24];
  for (int j = 23; j >= 0; --j) s = add(mul(s, t2), coeff[j]);
  const DoubleDouble logm = mul(mul(t, s), 2.0);
  return add(mul(dd_ln2, static_cast<double>(e)), logm);
}

inline DoubleDouble dd_log(double x) { return dd_log(DoubleDouble{x}); }

// Directed roundings used when collapsing a certified double-double bound to
// a plain double: the result must stay on the safe side of the true value.
inline double round_down(const DoubleDouble& v) {
  return v.lo < 0.0 ? std::nextafter(v.hi, -std::numeric_limits<double>::infinity())
                    : v.hi;
}
inline double round_up(const DoubleDouble& v) {
  return v.lo > 0.0 ? std::nextafter(v.hi, std::numeric_limits<double>::infinity())
                    : v.hi;
}

}  // namespace ordstat::detail

#pragma once

#include <cmath>

// Minimal double-double arithmetic (~31 significant digits). Used only on
// slow paths where a difference of means has cancelled below the relative
// accuracy a plain double evaluation can deliver. Compile without
// -ffast-math; the error-free transformations rely on IEEE rounding.

namespace heinzlab::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, double b) {
  double q1 = a.hi / b;
  DD r = dd_sub(a, two_prod(q1, b));
  double q2 = r.hi / b;
  r = dd_sub(r, two_prod(q2, b));
  double q3 = r.hi / b;
  return dd_add(quick_two_sum(q1, q2), q3);
}

inline DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  return dd_add(quick_two_sum(q1, q2), q3);
}

// log(x) for finite x > 0.
DD dd_log(double x);

// exp(a) for |a.hi| <= 700.
DD dd_exp(DD a);

// x^y = exp(y * log(x)) for x > 0, |y * log(x)| <= 700.
DD dd_pow(double x, double y);

}  // namespace heinzlab::detail

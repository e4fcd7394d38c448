#include "heinzlab/detail/double_double.hpp"

namespace heinzlab::detail {

namespace {

constexpr DD kLn2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};

}  // namespace

DD dd_log(double x) {
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, m in [0.5, 1)
  if (m < 0x1.6a09e667f3bcdp-1) {  // keep m in [1/sqrt(2), sqrt(2))
    m *= 2.0;
    e -= 1;
  }
  // atanh series: log m = 2 z (1 + z^2/3 + z^4/5 + ...), z = (m-1)/(m+1).
  // m - 1 is exact here (Sterbenz), |z| <= 0.1716.
  DD z = dd_div(DD{m - 1.0, 0.0}, two_sum(m, 1.0));
  DD zz = dd_mul(z, z);
  DD term = z;
  DD sum = z;
  for (int k = 1; k <= 22; ++k) {
    term = dd_mul(term, zz);
    sum = dd_add(sum, dd_div(term, static_cast<double>(2 * k + 1)));
  }
  sum = dd_mul(sum, 2.0);
  return dd_add(sum, dd_mul(kLn2, static_cast<double>(e)));
}

DD dd_exp(DD a) {
  double k = std::round(a.hi / kLn2.hi);
  DD r = dd_sub(a, dd_mul(kLn2, k));  // |r| <= ln2/2 + eps
  DD term = r;
  DD sum = dd_add(r, 1.0);
  for (int i = 2; i <= 26; ++i) {
    term = dd_div(dd_mul(term, r), static_cast<double>(i));
    sum = dd_add(sum, term);
  }
  int ki = static_cast<int>(k);
  return {std::ldexp(sum.hi, ki), std::ldexp(sum.lo, ki)};
}

DD dd_pow(double x, double y) { return dd_exp(dd_mul(dd_log(x), y)); }

}  // namespace heinzlab::detail

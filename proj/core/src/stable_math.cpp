#include "heinzlab/stable_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heinzlab/detail/double_double.hpp"
#include "heinzlab/errors.hpp"

namespace heinzlab::num {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogMax = 709.78;   // log(DBL_MAX) minus rounding headroom
constexpr double kLogTiny = -700.0;  // below this, lo^p contributes nothing
constexpr double kRefineRel = 1e-11;

}  // namespace

double pow_nu(double x, double nu) {
  if (nu == 0.0) return 1.0;
  if (nu == 1.0) return x;
  if (x == 0.0) return 0.0;
  return std::exp(nu * std::log(x));
}

double log_expm1(double y) {
  if (y <= 0.0) return -kInf;
  if (y > 0.6931471805599453) return y + std::log1p(-std::exp(-y));
  return std::log(std::expm1(y));
}

double pow_gap_from_delta(double lo, double delta, double p) {
  if (delta <= 0.0) return 0.0;
  if (lo == 0.0) {
    double logv = p * std::log(delta);
    if (logv > kLogMax) throw EvalError("power gap overflows double range");
    return std::pow(delta, p);
  }
  double t = p * std::log1p(delta / lo);
  double loglo = p * std::log(lo);
  if (loglo + t > kLogMax) throw EvalError("power gap overflows double range");
  if (t > 700.0 || loglo < kLogTiny) {
    // lo^p underflows or expm1 saturates; the difference is hi^p to within
    // one part in e^700.
    return std::exp(loglo + t);
  }
  return std::pow(lo, p) * std::expm1(t);
}

double signed_pow_gap_from_delta(double lo, double delta, double p) {
  if (delta >= 0.0) return pow_gap_from_delta(lo, delta, p);
  return -pow_gap_from_delta(lo + delta, -delta, p);
}

double pow_gap(double hi, double lo, double p) {
  if (hi < lo) return -pow_gap(lo, hi, p);
  return pow_gap_from_delta(lo, hi - lo, p);
}

double log_pow_gap_from_delta(double lo, double delta, double p) {
  if (delta <= 0.0) return -kInf;
  if (lo == 0.0) return p * std::log(delta);
  return p * std::log(lo) + log_expm1(p * std::log1p(delta / lo));
}

double exp_gap(double lo, double delta) {
  if (delta <= 0.0) return 0.0;
  if (lo + delta > kLogMax) throw EvalError("exponential gap overflows double range");
  return std::exp(lo) * std::expm1(delta);
}

double log_exp_gap(double lo, double delta) {
  if (delta <= 0.0) return -kInf;
  return lo + log_expm1(delta);
}

namespace {

double refined_young_gap(double a, double b, double nu, double nubar) {
  using namespace heinzlab::detail;
  DD sigma = dd_add(dd_mul(dd_log(a), nu), dd_mul(dd_log(b), nubar));
  DD geo = dd_exp(sigma);
  DD arith = dd_add(two_prod(nu, a), two_prod(nubar, b));
  DD gap = dd_sub(arith, geo);
  return gap.hi + gap.lo;
}

double refined_heinz_gap(double a, double b, double nu, double nubar) {
  using namespace heinzlab::detail;
  DD la = dd_log(a);
  DD lb = dd_log(b);
  DD geo = dd_exp(dd_add(dd_mul(la, nu), dd_mul(lb, nubar)));
  DD rev = dd_exp(dd_add(dd_mul(la, nubar), dd_mul(lb, nu)));
  DD gap = dd_sub(dd_sub(two_sum(a, b), geo), rev);
  return gap.hi + gap.lo;
}

}  // namespace

namespace {

double young_gap_from(double arith, double geo, double a, double b, double nu,
                      double nubar) {
  double fast = arith - geo;
  if (std::abs(fast) >= kRefineRel * (arith + geo)) return fast;
  if (nu == 0.0 || nu == 1.0) return fast;  // endpoint powers are exact
  return refined_young_gap(a, b, nu, nubar);
}

double heinz_gap_from(double s, double sum, double a, double b, double nu,
                      double nubar) {
  double fast = s - sum;
  if (std::abs(fast) >= kRefineRel * (s + sum)) return fast;
  if (nu == 0.0 || nu == 1.0) return fast;
  return refined_heinz_gap(a, b, nu, nubar);
}

}  // namespace

double young_gap(double a, double b, double nu, double nubar) {
  double arith = nu * a + nubar * b;
  double geo = pow_nu(a, nu) * pow_nu(b, nubar);
  return young_gap_from(arith, geo, a, b, nu, nubar);
}

double heinz_gap(double a, double b, double nu, double nubar) {
  double s = a + b;
  double sum = pow_nu(a, nu) * pow_nu(b, nubar) + pow_nu(a, nubar) * pow_nu(b, nu);
  return heinz_gap_from(s, sum, a, b, nu, nubar);
}

MeanParts mean_parts(double a, double b, double nu, double nubar) {
  MeanParts parts;
  parts.s = a + b;
  parts.g = 2.0 * (std::sqrt(a) * std::sqrt(b));
  parts.root_gap = pow_gap(std::max(a, b), std::min(a, b), 0.5);
  parts.delta = parts.root_gap * parts.root_gap;
  parts.arith = nu * a + nubar * b;
  parts.geo = pow_nu(a, nu) * pow_nu(b, nubar);
  parts.geo_rev = pow_nu(a, nubar) * pow_nu(b, nu);
  parts.heinz_sum = parts.geo + parts.geo_rev;
  parts.young_gap = young_gap_from(parts.arith, parts.geo, a, b, nu, nubar);
  parts.heinz_gap = heinz_gap_from(parts.s, parts.heinz_sum, a, b, nu, nubar);
  return parts;
}

}  // namespace heinzlab::num

#pragma once

// Shared scalar primitives for mean/gap evaluation. Every sandwich bound in
// the library is assembled from these so that specialization identities hold
// bit-for-bit and differences near equality manifolds keep relative accuracy
// instead of cancelling against operand-sized rounding noise.

namespace heinzlab::num {

/// x^nu as exp(nu * ln x) in working precision. Exact endpoints:
/// pow_nu(x, 0) = 1 (including x = 0), pow_nu(x, 1) = x, pow_nu(0, nu) = 0
/// for nu > 0. Requires x >= 0 and finite nu >= 0.
double pow_nu(double x, double nu);

/// hi^p - lo^p for hi >= lo >= 0, p > 0, with relative accuracy O(p) ulps
/// even when hi is close to lo. Throws EvalError when the result overflows.
double pow_gap(double hi, double lo, double p);

/// (lo + delta)^p - lo^p where delta >= 0 is an accurately known difference.
double pow_gap_from_delta(double lo, double delta, double p);

/// Signed variant: delta may be a few ulps negative when a mathematically
/// non-negative difference was computed in floating point.
double signed_pow_gap_from_delta(double lo, double delta, double p);

/// log((lo + delta)^p - lo^p); -infinity when delta == 0.
double log_pow_gap_from_delta(double lo, double delta, double p);

/// e^(lo + delta) - e^lo for delta >= 0. Throws EvalError on overflow.
double exp_gap(double lo, double delta);

/// log(e^(lo + delta) - e^lo) = lo + delta + log1p(-e^(-delta)).
double log_exp_gap(double lo, double delta);

/// log(e^y - 1) for y > 0, stable for both tiny and large y.
double log_expm1(double y);

/// All mean quantities of one (a, b, nu) triple, computed once. `nubar` is
/// the stored complement 1 - nu of the weight split.
struct MeanParts {
  double s = 0;          // a + b
  double g = 0;          // 2 sqrt(ab)
  double root_gap = 0;   // sqrt(max) - sqrt(min), relatively accurate
  double delta = 0;      // s - g computed as root_gap^2
  double arith = 0;      // nu a + (1-nu) b
  double geo = 0;        // a^nu b^(1-nu)
  double geo_rev = 0;    // a^(1-nu) b^nu
  double heinz_sum = 0;  // geo + geo_rev
  double young_gap = 0;  // arith - geo, refined near cancellation
  double heinz_gap = 0;  // s - heinz_sum, refined near cancellation
};

MeanParts mean_parts(double a, double b, double nu, double nubar);

/// arith - geo with a double-double refinement once the plain difference
/// falls below ~1e-11 of the operand scale.
double young_gap(double a, double b, double nu, double nubar);

/// (a + b) - (a^nu b^(1-nu) + a^(1-nu) b^nu), same refinement policy.
double heinz_gap(double a, double b, double nu, double nubar);

}  // namespace heinzlab::num

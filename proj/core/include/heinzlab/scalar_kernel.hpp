#pragma once

#include <array>

namespace heinzlab {

/// A pair of strictly positive finite scalars. The universal scalar input.
class PositivePair {
 public:
  PositivePair(double a, double b);  // throws DomainError unless a, b > 0 and finite
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_;
  double b_;
};

/// A weight nu in [0, 1] with its stored complement and split constants
/// r0 = min(nu, 1-nu), R0 = max(nu, 1-nu).
class WeightSplit {
 public:
  explicit WeightSplit(double nu);  // throws DomainError unless nu in [0, 1]
  double nu() const { return nu_; }
  double complement() const { return nubar_; }
  double r0() const { return nu_ <= nubar_ ? nu_ : nubar_; }
  double R0() const { return nu_ <= nubar_ ? nubar_ : nu_; }

 private:
  double nu_;
  double nubar_;
};

/// Positive integer power index m = 1, 2, 3, ...
class PowerIndex {
 public:
  explicit PowerIndex(int m);  // throws DomainError unless m >= 1
  int m() const { return m_; }

 private:
  int m_;
};

/// Real exponent p >= 1.
class ExponentP {
 public:
  explicit ExponentP(double p);  // throws DomainError unless finite p >= 1
  double p() const { return p_; }

 private:
  double p_;
};

/// (lower, middle, upper) of a two-sided bound, with derived slacks.
struct SandwichResult {
  double lower = 0;
  double middle = 0;
  double upper = 0;
  double lower_slack() const { return middle - lower; }
  double upper_slack() const { return upper - middle; }
};

/// The four terms of the m-th power refinement chain,
/// t1 <= t2 <= t3 <= t4 with t1 = t2 exactly for m in {1, 2}.
struct RefinementChain {
  double t1 = 0;  // r0^m (a^(m/2) - b^(m/2))^2
  double t2 = 0;  // r0^m ((a+b)^m - (2 sqrt(ab))^m)
  double t3 = 0;  // (nu a + (1-nu) b)^m - (a^nu b^(1-nu))^m
  double t4 = 0;  // R0^m ((a+b)^m - (2 sqrt(ab))^m)
  std::array<double, 4> terms() const { return {t1, t2, t3, t4}; }
};

double weighted_arithmetic(const PositivePair& pair, const WeightSplit& w);
double weighted_geometric(const PositivePair& pair, const WeightSplit& w);
double heinz_mean(const PositivePair& pair, const WeightSplit& w);

/// Gap of the weighted arithmetic-geometric inequality bounded by
/// r0/R0 multiples of (a+b) - 2 sqrt(ab).
SandwichResult young_sandwich(const PositivePair& pair, const WeightSplit& w);

/// Squared version: gap of the squares bounded by r0^2/R0^2 multiples of
/// (a+b)^2 - 4ab.
SandwichResult squared_young_sandwich(const PositivePair& pair, const WeightSplit& w);

/// r0^m (a^(m/2) - b^(m/2))^2, the refinement term below the m-th power gap.
double power_m_refinement_term(const PositivePair& pair, const WeightSplit& w,
                               const PowerIndex& idx);

/// Continuous-exponent sandwich; reduces to young_sandwich at p = 1 and to
/// squared_young_sandwich at p = 2 (same evaluation path, bit-identical).
SandwichResult power_p_sandwich(const PositivePair& pair, const WeightSplit& w,
                                const ExponentP& exp);

/// Full four-term chain ordering the refinement term, the power-p style
/// lower bound at p = m, the m-th power gap, and the reverse bound.
RefinementChain theorem22_chain(const PositivePair& pair, const WeightSplit& w,
                                const PowerIndex& idx);

/// Heinz-mean gap (a+b)/2 - H_nu bounded by 2 r0 / 2 R0 multiples of
/// (a+b)/2 - sqrt(ab).
SandwichResult heinz_sandwich(const PositivePair& pair, const WeightSplit& w);

/// p-th power Heinz gap (a+b)^p - (a^nu b^(1-nu) + a^(1-nu) b^nu)^p bounded
/// by (2r0)^p/(2R0)^p multiples of (a+b)^p - (2 sqrt(ab))^p.
SandwichResult heinz_power_sandwich(const PositivePair& pair, const WeightSplit& w,
                                    const ExponentP& exp);

}  // namespace heinzlab

#include "heinzlab/scalar_kernel.hpp"

#include <cmath>
#include <string>

#include "heinzlab/errors.hpp"
#include "heinzlab/stable_math.hpp"

namespace heinzlab {

PositivePair::PositivePair(double a, double b) : a_(a), b_(b) {
  if (!(std::isfinite(a) && a > 0.0))
    throw DomainError("PositivePair requires a > 0 and finite, got a = " + std::to_string(a));
  if (!(std::isfinite(b) && b > 0.0))
    throw DomainError("PositivePair requires b > 0 and finite, got b = " + std::to_string(b));
}

WeightSplit::WeightSplit(double nu) : nu_(nu), nubar_(1.0 - nu) {
  if (!(std::isfinite(nu) && nu >= 0.0 && nu <= 1.0))
    throw DomainError("WeightSplit requires nu in [0, 1], got nu = " + std::to_string(nu));
}

PowerIndex::PowerIndex(int m) : m_(m) {
  if (m < 1) throw DomainError("PowerIndex requires m >= 1, got m = " + std::to_string(m));
}

ExponentP::ExponentP(double p) : p_(p) {
  if (!(std::isfinite(p) && p >= 1.0))
    throw DomainError("ExponentP requires p >= 1, got p = " + std::to_string(p));
}

double weighted_arithmetic(const PositivePair& pair, const WeightSplit& w) {
  return w.nu() * pair.a() + w.complement() * pair.b();
}

double weighted_geometric(const PositivePair& pair, const WeightSplit& w) {
  return num::pow_nu(pair.a(), w.nu()) * num::pow_nu(pair.b(), w.complement());
}

double heinz_mean(const PositivePair& pair, const WeightSplit& w) {
  double sum = num::pow_nu(pair.a(), w.nu()) * num::pow_nu(pair.b(), w.complement()) +
               num::pow_nu(pair.a(), w.complement()) * num::pow_nu(pair.b(), w.nu());
  return 0.5 * sum;
}

namespace {

SandwichResult power_sandwich_core(const PositivePair& pair, const WeightSplit& w,
                                   double p) {
  num::MeanParts parts = num::mean_parts(pair.a(), pair.b(), w.nu(), w.complement());
  double bracket = num::pow_gap_from_delta(parts.g, parts.delta, p);
  SandwichResult out;
  out.lower = std::pow(w.r0(), p) * bracket;
  out.middle = num::signed_pow_gap_from_delta(parts.geo, parts.young_gap, p);
  out.upper = std::pow(w.R0(), p) * bracket;
  return out;
}

}  // namespace

SandwichResult young_sandwich(const PositivePair& pair, const WeightSplit& w) {
  return power_sandwich_core(pair, w, 1.0);
}

SandwichResult squared_young_sandwich(const PositivePair& pair, const WeightSplit& w) {
  return power_sandwich_core(pair, w, 2.0);
}

SandwichResult power_p_sandwich(const PositivePair& pair, const WeightSplit& w,
                                const ExponentP& exp) {
  return power_sandwich_core(pair, w, exp.p());
}

double power_m_refinement_term(const PositivePair& pair, const WeightSplit& w,
                               const PowerIndex& idx) {
  double hi = std::max(pair.a(), pair.b());
  double lo = std::min(pair.a(), pair.b());
  double half_gap = num::pow_gap(hi, lo, 0.5 * idx.m());
  return std::pow(w.r0(), static_cast<double>(idx.m())) * (half_gap * half_gap);
}

RefinementChain theorem22_chain(const PositivePair& pair, const WeightSplit& w,
                                const PowerIndex& idx) {
  double m = static_cast<double>(idx.m());
  RefinementChain chain;
  chain.t1 = power_m_refinement_term(pair, w, idx);
  SandwichResult sandwich = power_sandwich_core(pair, w, m);
  chain.t2 = sandwich.lower;
  chain.t3 = sandwich.middle;
  chain.t4 = sandwich.upper;
  return chain;
}

SandwichResult heinz_sandwich(const PositivePair& pair, const WeightSplit& w) {
  num::MeanParts parts = num::mean_parts(pair.a(), pair.b(), w.nu(), w.complement());
  double half_bracket = 0.5 * parts.delta;  // (a+b)/2 - sqrt(ab)
  SandwichResult out;
  out.lower = 2.0 * w.r0() * half_bracket;
  out.middle = 0.5 * parts.heinz_gap;
  out.upper = 2.0 * w.R0() * half_bracket;
  return out;
}

SandwichResult heinz_power_sandwich(const PositivePair& pair, const WeightSplit& w,
                                    const ExponentP& exp) {
  num::MeanParts parts = num::mean_parts(pair.a(), pair.b(), w.nu(), w.complement());
  double bracket = num::pow_gap_from_delta(parts.g, parts.delta, exp.p());
  SandwichResult out;
  out.lower = std::pow(2.0 * w.r0(), exp.p()) * bracket;
  out.middle = num::signed_pow_gap_from_delta(parts.heinz_sum, parts.heinz_gap, exp.p());
  out.upper = std::pow(2.0 * w.R0(), exp.p()) * bracket;
  return out;
}

}  // namespace heinzlab

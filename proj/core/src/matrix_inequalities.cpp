#include "heinzlab/matrix_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "heinzlab/errors.hpp"
#include "heinzlab/stable_math.hpp"

namespace heinzlab {

MatrixTriple::MatrixTriple(PsdMatrix a, PsdMatrix b, ComplexMatrix x)
    : A(std::move(a)), B(std::move(b)), X(std::move(x)) {
  if (!X.is_square()) throw DomainError("X must be square");
  if (A.dim() != X.rows() || B.dim() != X.rows())
    throw DomainError("triple dimensions do not agree: A " + std::to_string(A.dim()) +
                      ", B " + std::to_string(B.dim()) + ", X " + std::to_string(X.rows()));
}

namespace {

double hs2(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& e : m.entries()) sum += e.real() * e.real() + e.imag() * e.imag();
  return sum;
}

ComplexMatrix heinz_sum_matrix(const MatrixTriple& t, const WeightSplit& w) {
  ComplexMatrix lhs = matmul(matmul(t.A.fractional_power(w.nu()), t.X),
                             t.B.fractional_power(w.complement()));
  ComplexMatrix rhs = matmul(matmul(t.A.fractional_power(w.complement()), t.X),
                             t.B.fractional_power(w.nu()));
  return add(lhs, rhs);
}

}  // namespace

TripleWorkspace make_triple_workspace(const MatrixTriple& t, const WeightSplit& w) {
  ComplexMatrix ax = matmul(t.A.base(), t.X);
  ComplexMatrix xb = matmul(t.X, t.B.base());
  ComplexMatrix sum = add(ax, xb);
  ComplexMatrix diff = subtract(ax, xb);
  ComplexMatrix half = matmul(matmul(t.A.fractional_power(0.5), t.X),
                              t.B.fractional_power(0.5));
  ComplexMatrix arith = add(scale(w.nu(), ax), scale(w.complement(), xb));
  ComplexMatrix geo = matmul(matmul(t.A.fractional_power(w.nu()), t.X),
                             t.B.fractional_power(w.complement()));
  TripleWorkspace ws{hs2(sum),
                     hs2(diff),
                     hs2(half),
                     hs2(arith),
                     hs2(geo),
                     singular_values(sum),
                     singular_values(half),
                     singular_values(heinz_sum_matrix(t, w))};
  return ws;
}

double hs_identity_residual(const MatrixTriple& t) {
  ComplexMatrix ax = matmul(t.A.base(), t.X);
  ComplexMatrix xb = matmul(t.X, t.B.base());
  double lhs = hs2(subtract(ax, xb));
  double bracket = hs2(add(ax, xb)) -
                   4.0 * hs2(matmul(matmul(t.A.fractional_power(0.5), t.X),
                                    t.B.fractional_power(0.5)));
  return std::abs(lhs - bracket);
}

namespace {

SandwichResult hs_young_from(const TripleWorkspace& ws, const WeightSplit& w) {
  double bracket = ws.hs2_sum - 4.0 * ws.hs2_half;
  SandwichResult out;
  out.lower = (w.r0() * w.r0()) * bracket;
  out.middle = ws.hs2_arith - ws.hs2_geo;
  out.upper = (w.R0() * w.R0()) * bracket;
  return out;
}

SandwichResult phi_hs_from(const TripleWorkspace& ws, const WeightSplit& w,
                           const ConvexFunctionSpec& f, HsSandwichForm form) {
  double bracket = ws.hs2_sum - 4.0 * ws.hs2_half;
  SandwichResult out;
  if (form == HsSandwichForm::Theorem) {
    double r2 = w.r0() * w.r0();
    double R2 = w.R0() * w.R0();
    out.lower = f.diff_scaled(r2, ws.hs2_sum, 4.0 * ws.hs2_half, bracket);
    out.middle = f.diff_scaled(1.0, ws.hs2_arith, ws.hs2_geo, ws.hs2_arith - ws.hs2_geo);
    out.upper = f.diff_scaled(R2, ws.hs2_sum, 4.0 * ws.hs2_half, bracket);
    return out;
  }
  // Power display on plain (unsquared) Hilbert-Schmidt norms with p = 2q.
  if (f.kind() != ConvexFunctionSpec::Kind::Power)
    throw DomainError("the power display form requires a power catalog function");
  double p = 2.0 * f.exponent();
  double norm_sum = std::sqrt(ws.hs2_sum);
  double norm_half2 = 2.0 * std::sqrt(ws.hs2_half);
  double norm_arith = std::sqrt(ws.hs2_arith);
  double norm_geo = std::sqrt(ws.hs2_geo);
  double display_bracket = num::pow_gap(norm_sum, norm_half2, p);
  out.lower = std::pow(w.r0(), p) * display_bracket;
  out.middle = num::pow_gap(norm_arith, norm_geo, p);
  out.upper = std::pow(w.R0(), p) * display_bracket;
  return out;
}

std::array<double, 3> heinz_bounds_from(const TripleWorkspace& ws, const NormSelector& n) {
  return {2.0 * n.apply(ws.sv_half), n.apply(ws.sv_heinz), n.apply(ws.sv_sum)};
}

SandwichResult heinz_sandwich_from(const TripleWorkspace& ws, const WeightSplit& w,
                                   const NormSelector& n) {
  std::array<double, 3> b = heinz_bounds_from(ws, n);
  double bracket = b[2] - b[0];
  SandwichResult out;
  out.lower = 2.0 * w.r0() * bracket;
  out.middle = b[2] - b[1];
  out.upper = 2.0 * w.R0() * bracket;
  return out;
}

SandwichResult phi_heinz_sandwich_from(const TripleWorkspace& ws, const WeightSplit& w,
                                       const NormSelector& n, const ConvexFunctionSpec& f) {
  std::array<double, 3> b = heinz_bounds_from(ws, n);
  double bracket = b[2] - b[0];
  SandwichResult out;
  out.lower = f.diff_scaled(2.0 * w.r0(), b[2], b[0], bracket);
  out.middle = f.diff_scaled(1.0, b[2], b[1], b[2] - b[1]);
  out.upper = f.diff_scaled(2.0 * w.R0(), b[2], b[0], bracket);
  return out;
}

}  // namespace

SandwichResult hs_young_sandwich(const MatrixTriple& t, const WeightSplit& w) {
  return hs_young_from(make_triple_workspace(t, w), w);
}

SandwichResult phi_hs_sandwich(const MatrixTriple& t, const WeightSplit& w,
                               const ConvexFunctionSpec& f, HsSandwichForm form) {
  return phi_hs_from(make_triple_workspace(t, w), w, f, form);
}

std::array<double, 3> heinz_norm_bounds(const MatrixTriple& t, const WeightSplit& w,
                                        const NormSelector& norm) {
  return heinz_bounds_from(make_triple_workspace(t, w), norm);
}

SandwichResult heinz_norm_sandwich(const MatrixTriple& t, const WeightSplit& w,
                                   const NormSelector& norm) {
  return heinz_sandwich_from(make_triple_workspace(t, w), w, norm);
}

SandwichResult phi_heinz_norm_sandwich(const MatrixTriple& t, const WeightSplit& w,
                                       const NormSelector& norm,
                                       const ConvexFunctionSpec& f) {
  return phi_heinz_sandwich_from(make_triple_workspace(t, w), w, norm, f);
}

ConvexityScan heinz_convexity_scan(const MatrixTriple& t, const NormSelector& norm,
                                   int grid_size) {
  if (grid_size < 3) throw DomainError("convexity scan requires grid_size >= 3");
  ConvexityScan scan;
  scan.samples.reserve(grid_size);
  for (int k = 0; k < grid_size; ++k) {
    double nu = static_cast<double>(k) / (grid_size - 1);
    WeightSplit w(nu);
    double f = norm.apply(singular_values(heinz_sum_matrix(t, w)));
    scan.samples.emplace_back(nu, f);
    scan.max_value = std::max(scan.max_value, f);
  }
  scan.min_second_difference = std::numeric_limits<double>::infinity();
  for (int k = 1; k + 1 < grid_size; ++k) {
    double second = scan.samples[k + 1].second - 2.0 * scan.samples[k].second +
                    scan.samples[k - 1].second;
    scan.min_second_difference = std::min(scan.min_second_difference, second);
  }
  scan.max_symmetry_gap = 0.0;
  for (int k = 0; k < grid_size; ++k) {
    double gap = std::abs(scan.samples[k].second - scan.samples[grid_size - 1 - k].second);
    scan.max_symmetry_gap = std::max(scan.max_symmetry_gap, gap);
  }
  double fmin = scan.samples[0].second;
  for (const auto& [nu, f] : scan.samples) fmin = std::min(fmin, f);
  double tie = kConvexityTolerance * scan.max_value;
  double center = 0.5 * (grid_size - 1);
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_size; ++k) {
    if (scan.samples[k].second <= fmin + tie) {
      double dist = std::abs(k - center);
      if (dist < best_dist) {
        best_dist = dist;
        best = static_cast<std::size_t>(k);
      }
    }
  }
  scan.argmin_index = best;
  scan.convex_ok =
      scan.min_second_difference >= -kConvexityTolerance * scan.max_value;
  scan.symmetric_ok = scan.max_symmetry_gap <= kSymmetryTolerance * scan.max_value;
  scan.argmin_ok = best_dist <= 1.0 + 1e-9;
  return scan;
}

}  // namespace heinzlab

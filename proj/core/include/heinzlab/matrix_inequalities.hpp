#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "heinzlab/complex_matrix.hpp"
#include "heinzlab/convex_gate.hpp"
#include "heinzlab/norms.hpp"
#include "heinzlab/psd_matrix.hpp"
#include "heinzlab/scalar_kernel.hpp"

namespace heinzlab {

/// (A, B, X) with A, B positive semidefinite, all n x n.
struct MatrixTriple {
  PsdMatrix A;
  PsdMatrix B;
  ComplexMatrix X;
  MatrixTriple(PsdMatrix a, PsdMatrix b, ComplexMatrix x);  // validates dimensions
  std::size_t dim() const { return X.rows(); }
};

inline constexpr double kIdentityTolerance = 1e-10;   // tau_id
inline constexpr double kConvexityTolerance = 1e-9;   // tau_conv, relative to max f
inline constexpr double kSymmetryTolerance = 1e-10;   // tau_sym, relative to max f

/// | ||AX-XB||_2^2 - (||AX+XB||_2^2 - 4 ||A^1/2 X B^1/2||_2^2) |.
/// Bounded by tau_id * (||AX+XB||_2^2 + 1) for well-conditioned inputs.
double hs_identity_residual(const MatrixTriple& t);

/// Hilbert-Schmidt Young sandwich:
///   r0^2 B <= ||nu AX + (1-nu) XB||_2^2 - ||A^nu X B^(1-nu)||_2^2 <= R0^2 B
/// with B = ||AX+XB||_2^2 - 4 ||A^1/2 X B^1/2||_2^2.
SandwichResult hs_young_sandwich(const MatrixTriple& t, const WeightSplit& w);

/// The two algebraic arrangements of the phi-lifted Hilbert-Schmidt sandwich.
/// Theorem: bounds are phi(r0^2 S) - phi(4 r0^2 T) on squared norms.
/// PowerDisplay: with phi = x^q this is the equivalent display
/// r0^p (||AX+XB||_2^p - 2^p ||A^1/2 X B^1/2||_2^p), p = 2q; power kind only.
enum class HsSandwichForm { Theorem, PowerDisplay };

SandwichResult phi_hs_sandwich(const MatrixTriple& t, const WeightSplit& w,
                               const ConvexFunctionSpec& f,
                               HsSandwichForm form = HsSandwichForm::Theorem);

/// (2 |||A^1/2 X B^1/2|||, |||A^nu X B^(1-nu) + A^(1-nu) X B^nu|||, |||AX+XB|||),
/// non-decreasing.
std::array<double, 3> heinz_norm_bounds(const MatrixTriple& t, const WeightSplit& w,
                                        const NormSelector& norm);

/// 2 r0 (|||AX+XB||| - 2 |||A^1/2 X B^1/2|||) <= |||AX+XB||| - |||Heinz sum||| <= 2 R0 (...).
SandwichResult heinz_norm_sandwich(const MatrixTriple& t, const WeightSplit& w,
                                   const NormSelector& norm);

/// phi-lifted version of the Heinz norm sandwich; with phi = x^q and a
/// Schatten norm this reproduces the (2r0)^q / (2R0)^q display.
SandwichResult phi_heinz_norm_sandwich(const MatrixTriple& t, const WeightSplit& w,
                                       const NormSelector& norm,
                                       const ConvexFunctionSpec& f);

/// Samples f(nu) = |||A^nu X B^(1-nu) + A^(1-nu) X B^nu||| on a uniform grid
/// and reports discrete convexity, symmetry and the argmin location.
struct ConvexityScan {
  std::vector<std::pair<double, double>> samples;  // (nu, f(nu))
  double max_value = 0;
  double min_second_difference = 0;  // >= -tau_conv * max_value when convex
  double max_symmetry_gap = 0;       // <= tau_sym * max_value
  std::size_t argmin_index = 0;      // tie-broken toward the central grid point
  bool convex_ok = false;
  bool symmetric_ok = false;
  bool argmin_ok = false;  // within one grid cell of nu = 1/2
};

ConvexityScan heinz_convexity_scan(const MatrixTriple& t, const NormSelector& norm,
                                   int grid_size);

/// Precomputed per-trial quantities shared by the Heinz-type checks: the
/// singular values of AX+XB, of the Heinz sum, and of A^1/2 X B^1/2, plus
/// the squared Hilbert-Schmidt quantities of the Young-type checks.
struct TripleWorkspace {
  double hs2_sum = 0;       // ||AX+XB||_2^2
  double hs2_diff = 0;      // ||AX-XB||_2^2
  double hs2_half = 0;      // ||A^1/2 X B^1/2||_2^2
  double hs2_arith = 0;     // ||nu AX + (1-nu) XB||_2^2
  double hs2_geo = 0;       // ||A^nu X B^(1-nu)||_2^2
  SingularValues sv_sum;    // AX+XB
  SingularValues sv_half;   // A^1/2 X B^1/2
  SingularValues sv_heinz;  // A^nu X B^(1-nu) + A^(1-nu) X B^nu
};

TripleWorkspace make_triple_workspace(const MatrixTriple& t, const WeightSplit& w);

}  // namespace heinzlab

#pragma once

#include <vector>

#include "heinzlab/complex_matrix.hpp"

namespace heinzlab {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // non-increasing
  ComplexMatrix eigenvectors;       // unitary, columns match eigenvalues
};

/// Cyclic Jacobi eigendecomposition for Hermitian matrices with complex
/// rotations. Iteration cap 60 sweeps, off-diagonal convergence threshold
/// 1e-14 * ||H||_HS. Input must be Hermitian to within 1e-12 * ||H||_HS;
/// the Hermitian part (H + H^*)/2 is what gets decomposed.
EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& h);

/// Hermitian deviation ||H - H^*||_HS and related residuals used by the
/// validation tolerances.
double hermitian_deviation(const ComplexMatrix& h);

inline constexpr double kHermitianTolerance = 1e-12;   // relative to ||H||_HS
inline constexpr double kEigenResidualTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 60;
inline constexpr double kJacobiOffDiagTolerance = 1e-14;  // relative to ||H||_HS

}  // namespace heinzlab

#pragma once

#include <span>
#include <vector>

#include "heinzlab/complex_matrix.hpp"
#include "heinzlab/hermitian_eigen.hpp"

namespace heinzlab {

/// Hermitian positive semidefinite matrix with its spectral decomposition
/// cached at construction. Eigenvalues in [-1e-12 * lambda_max, 0) are
/// clamped to zero; anything more negative rejects the matrix.
///
/// Fractional powers follow the convention 0^nu = 0 for nu > 0 and 0^0 = 1,
/// so A^0 = I on the full space including the kernel.
class PsdMatrix {
 public:
  explicit PsdMatrix(ComplexMatrix base);  // throws DomainError / EvalError

  const ComplexMatrix& base() const { return base_; }
  std::size_t dim() const { return base_.rows(); }
  std::span<const double> eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return decomposition_.eigenvectors; }

  /// Q diag(lambda_i^nu) Q^* for nu in [0, 1].
  ComplexMatrix fractional_power(double nu) const;

 private:
  ComplexMatrix base_;
  EigenDecomposition decomposition_;
  std::vector<double> eigenvalues_;  // clamped, non-increasing
};

inline constexpr double kPsdClampTolerance = 1e-12;  // relative to lambda_max

}  // namespace heinzlab

#include "heinzlab/psd_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "heinzlab/errors.hpp"
#include "heinzlab/stable_math.hpp"

namespace heinzlab {

PsdMatrix::PsdMatrix(ComplexMatrix base) : base_(std::move(base)) {
  if (!base_.is_square())
    throw DomainError("positive semidefinite matrix must be square");
  base_.require_finite();
  decomposition_ = hermitian_eigendecomposition(base_);
  eigenvalues_ = decomposition_.eigenvalues;
  double lambda_max = eigenvalues_.empty() ? 0.0 : std::max(eigenvalues_.front(), 0.0);
  double clamp = kPsdClampTolerance * lambda_max;
  for (double& lambda : eigenvalues_) {
    if (lambda < 0.0) {
      if (lambda < -clamp)
        throw DomainError("matrix is not positive semidefinite: eigenvalue " +
                          std::to_string(lambda) + " below -" + std::to_string(clamp));
      lambda = 0.0;
    }
  }
}

ComplexMatrix PsdMatrix::fractional_power(double nu) const {
  if (!(nu >= 0.0 && nu <= 1.0))
    throw DomainError("fractional power requires nu in [0, 1], got " + std::to_string(nu));
  std::size_t n = dim();
  const ComplexMatrix& q = decomposition_.eigenvectors;
  // Q diag(lambda^nu) Q^*
  ComplexMatrix scaled(n, n);  // Q diag(lambda^nu)
  for (std::size_t j = 0; j < n; ++j) {
    double w = num::pow_nu(eigenvalues_[j], nu);
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) = q(i, j) * w;
  }
  return matmul(scaled, adjoint(q));
}

}  // namespace heinzlab

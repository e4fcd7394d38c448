#include "heinzlab/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "heinzlab/errors.hpp"

namespace heinzlab {

double hermitian_deviation(const ComplexMatrix& h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) {
      std::complex<double> d = h(i, j) - std::conj(h(j, i));
      sum += d.real() * d.real() + d.imag() * d.imag();
    }
  return std::sqrt(sum);
}

namespace {

double hs_norm_of(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& e : m.entries()) sum += e.real() * e.real() + e.imag() * e.imag();
  return std::sqrt(sum);
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i == j) continue;
      sum += std::norm(m(i, j));
    }
  return std::sqrt(sum);
}

}  // namespace

EigenDecomposition hermitian_eigendecomposition(const ComplexMatrix& h) {
  if (!h.is_square())
    throw DomainError("eigendecomposition requires a square matrix, got " +
                      std::to_string(h.rows()) + "x" + std::to_string(h.cols()));
  std::size_t n = h.rows();
  double scale = hs_norm_of(h);
  if (hermitian_deviation(h) > kHermitianTolerance * std::max(scale, 1e-300) &&
      scale > 0.0)
    throw DomainError("matrix is not Hermitian within tolerance");

  // Work on the Hermitian part; for exactly Hermitian inputs this is a copy.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = {h(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      std::complex<double> v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }

  ComplexMatrix v = ComplexMatrix::identity(n);
  double threshold = kJacobiOffDiagTolerance * scale;

  bool converged = scale == 0.0 || n == 1 || off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        std::complex<double> apq = a(p, q);
        double mag = std::abs(apq);
        if (mag == 0.0) continue;
        double app = a(p, p).real();
        double aqq = a(q, q).real();
        // Real 2x2 rotation for [[app, |apq|], [|apq|, aqq]] with the phase
        // of apq folded into the rotation.
        double tau = (app - aqq) / (2.0 * mag);
        double t = (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        std::complex<double> u = apq / mag;  // unit phase
        std::complex<double> su = s * u;
        // Columns p and q of A and V under the rotation
        // R = [[c, s u], [-s conj(u), c]] applied as A <- R^* A R, V <- V R.
        for (std::size_t k = 0; k < n; ++k) {
          std::complex<double> akp = a(k, p);
          std::complex<double> akq = a(k, q);
          a(k, p) = c * akp - std::conj(su) * akq;
          a(k, q) = su * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          std::complex<double> apk = a(p, k);
          std::complex<double> aqk = a(q, k);
          a(p, k) = c * apk - su * aqk;
          a(q, k) = std::conj(su) * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          std::complex<double> vkp = v(k, p);
          std::complex<double> vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(su) * vkq;
          v(k, q) = su * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = {a(p, p).real(), 0.0};
        a(q, q) = {a(q, q).real(), 0.0};
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged)
    throw EvalError("Jacobi eigendecomposition did not converge within " +
                    std::to_string(kJacobiMaxSweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    out.eigenvalues[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row)
      out.eigenvectors(row, col) = v(row, order[col]);
  }
  return out;
}

}  // namespace heinzlab

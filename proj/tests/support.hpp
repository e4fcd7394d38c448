#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "heinzlab/complex_matrix.hpp"
#include "heinzlab/trial_rng.hpp"

namespace testsupport {

inline bool close_rel(double got, double want, double tol = 1e-12) {
  return std::abs(got - want) <= tol * std::max(std::abs(want), 1.0e-300);
}

inline bool close_abs_or_rel(double got, double want, double tol = 1e-12) {
  return std::abs(got - want) <= tol * std::max(std::abs(want), 1.0);
}

inline std::int64_t ordered_bits(double x) {
  std::int64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b < 0 ? std::numeric_limits<std::int64_t>::min() - b : b;
}

inline std::int64_t ulp_distance(double a, double b) {
  if (a == b) return 0;
  std::int64_t d = ordered_bits(a) - ordered_bits(b);
  return d < 0 ? -d : d;
}

inline bool within_ulps(double a, double b, std::int64_t ulps) {
  return ulp_distance(a, b) <= ulps;
}

/// Unitary matrix from modified Gram-Schmidt on a complex Gaussian sample.
inline heinzlab::ComplexMatrix random_unitary(const heinzlab::TrialRng& rng, std::size_t n,
                                              std::uint64_t base) {
  using heinzlab::ComplexMatrix;
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re, im;
      rng.gaussian_pair(base + 2 * (i * n + j), re, im);
      g(i, j) = {re, im};
    }
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t prev = 0; prev < col; ++prev) {
      std::complex<double> proj = 0;
      for (std::size_t r = 0; r < n; ++r) proj += std::conj(g(r, prev)) * g(r, col);
      for (std::size_t r = 0; r < n; ++r) g(r, col) -= proj * g(r, prev);
    }
    double norm = 0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(g(r, col));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) g(r, col) /= norm;
  }
  return g;
}

inline std::string read_data_file(const std::string& name) {
  std::string path = std::string(HEINZLAB_TEST_DATA_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing test data file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace testsupport

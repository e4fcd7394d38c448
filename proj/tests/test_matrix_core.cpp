#include <doctest.h>

#include <cmath>
#include <complex>

#include "heinzlab/complex_matrix.hpp"
#include "heinzlab/errors.hpp"
#include "heinzlab/hermitian_eigen.hpp"
#include "heinzlab/matrix_io.hpp"
#include "heinzlab/norms.hpp"
#include "heinzlab/psd_matrix.hpp"
#include "heinzlab/trial_rng.hpp"
#include "support.hpp"

using namespace heinzlab;
using testsupport::close_rel;
using C = std::complex<double>;

namespace {

ComplexMatrix sym22() {
  return ComplexMatrix(2, 2, {C(2, 0), C(1, 0), C(1, 0), C(2, 0)});
}

ComplexMatrix pauli_y() {
  return ComplexMatrix(2, 2, {C(0, 0), C(0, -1), C(0, 1), C(0, 0)});
}

ComplexMatrix random_hermitian(const TrialRng& rng, std::size_t n, std::uint64_t base) {
  ComplexMatrix h(n, n);
  std::uint64_t k = base;
  for (std::size_t i = 0; i < n; ++i) {
    double re, im;
    rng.gaussian_pair(k, re, im);
    k += 2;
    h(i, i) = {re, 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      rng.gaussian_pair(k, re, im);
      k += 2;
      h(i, j) = {re, im};
      h(j, i) = {re, -im};
    }
  }
  return h;
}

double hs(const ComplexMatrix& m) { return hilbert_schmidt_norm(m); }

}  // namespace

TEST_CASE("matrix arithmetic basics") {
  ComplexMatrix a = ComplexMatrix::identity(3);
  ComplexMatrix b(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) b(i, j) = C(1.0 + i, 0.5 * j);
  ComplexMatrix prod = matmul(a, b);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(prod(i, j) == b(i, j));

  ComplexMatrix py = pauli_y();
  ComplexMatrix adj = adjoint(py);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(adj(i, j) == py(i, j));

  double d1[2] = {1, 2};
  double d2[2] = {3, 4};
  ComplexMatrix prod_d = matmul(ComplexMatrix::diagonal(std::span<const double>(d1)),
                                ComplexMatrix::diagonal(std::span<const double>(d2)));
  CHECK(prod_d(0, 0) == C(3, 0));
  CHECK(prod_d(1, 1) == C(8, 0));

  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), DomainError);
  CHECK_THROWS_AS(add(ComplexMatrix(2, 2), ComplexMatrix(3, 3)), DomainError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {C(std::nan(""), 0), C(0, 0), C(0, 0), C(0, 0)}),
                  DomainError);
}

TEST_CASE("eigendecomposition on known matrices") {
  auto id = hermitian_eigendecomposition(ComplexMatrix::identity(3));
  for (double l : id.eigenvalues) CHECK(l == 1.0);

  auto e = hermitian_eigendecomposition(sym22());
  CHECK(close_rel(e.eigenvalues[0], 3.0, 1e-13));
  CHECK(close_rel(e.eigenvalues[1], 1.0, 1e-13));

  auto py = hermitian_eigendecomposition(pauli_y());
  CHECK(close_rel(py.eigenvalues[0], 1.0, 1e-13));
  CHECK(close_rel(py.eigenvalues[1], -1.0, 1e-13));

  CHECK_THROWS_AS(hermitian_eigendecomposition(ComplexMatrix(2, 3)), DomainError);
  ComplexMatrix skew(2, 2, {C(0, 0), C(1, 0), C(-1, 0), C(0, 0)});
  CHECK_THROWS_AS(hermitian_eigendecomposition(skew), DomainError);
}

TEST_CASE("eigendecomposition residuals on random Hermitian matrices") {
  TrialRng rng(101, 0);
  for (std::uint64_t trial = 0; trial < 400; ++trial) {
    TrialRng trng(101, trial);
    std::size_t n = 1 + static_cast<std::size_t>(trng.u01(0) * 8.0);
    ComplexMatrix h = random_hermitian(trng, n, 10);
    auto eig = hermitian_eigendecomposition(h);
    // reconstruction
    ComplexMatrix recon(n, n);
    const ComplexMatrix& q = eig.eigenvectors;
    ComplexMatrix scaled = q;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) scaled(i, j) = q(i, j) * eig.eigenvalues[j];
    recon = matmul(scaled, adjoint(q));
    double scale = std::max(hs(h), 1e-300);
    CHECK(hs(subtract(h, recon)) <= 1e-12 * scale);
    // unitarity
    ComplexMatrix qq = matmul(adjoint(q), q);
    CHECK(hs(subtract(qq, ComplexMatrix::identity(n))) <= 1e-12 * std::sqrt((double)n));
    // eigenvalues sorted
    for (std::size_t i = 1; i < n; ++i) CHECK(eig.eigenvalues[i - 1] >= eig.eigenvalues[i]);
  }
}

TEST_CASE("psd validation and fractional powers") {
  double d49[2] = {4, 9};
  PsdMatrix a(ComplexMatrix::diagonal(std::span<const double>(d49)));
  ComplexMatrix half = a.fractional_power(0.5);
  CHECK(close_rel(half(0, 0).real(), 2.0, 1e-13));
  CHECK(close_rel(half(1, 1).real(), 3.0, 1e-13));

  PsdMatrix s(sym22());
  ComplexMatrix sh = s.fractional_power(0.5);
  double on = (std::sqrt(3.0) + 1.0) / 2.0;
  double off = (std::sqrt(3.0) - 1.0) / 2.0;
  CHECK(close_rel(sh(0, 0).real(), on, 1e-12));
  CHECK(close_rel(sh(0, 1).real(), off, 1e-12));
  CHECK(close_rel(sh(1, 0).real(), off, 1e-12));
  CHECK(close_rel(sh(1, 1).real(), on, 1e-12));

  // A^1 = A, A^0 = I
  ComplexMatrix one = s.fractional_power(1.0);
  CHECK(hs(subtract(one, sym22())) <= 1e-12 * hs(sym22()));
  ComplexMatrix zero = s.fractional_power(0.0);
  CHECK(hs(subtract(zero, ComplexMatrix::identity(2))) <= 1e-12 * std::sqrt(2.0));

  ComplexMatrix indef(2, 2, {C(1, 0), C(0, 0), C(0, 0), C(-1, 0)});
  CHECK_THROWS_AS(PsdMatrix{indef}, DomainError);
  CHECK_THROWS_AS(s.fractional_power(1.5), DomainError);
}

TEST_CASE("fractional power semigroup property") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    TrialRng trng(211, trial);
    std::size_t n = 1 + static_cast<std::size_t>(trng.u01(0) * 6.0);
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double re, im;
        trng.gaussian_pair(10 + 2 * (i * n + j), re, im);
        g(i, j) = {re, im};
      }
    ComplexMatrix base = matmul(adjoint(g), g);
    for (std::size_t i = 0; i < n; ++i) base(i, i) += 1e-8;
    PsdMatrix a(base);
    ComplexMatrix root = a.fractional_power(0.5);
    CHECK(hs(subtract(matmul(root, root), a.base())) <= 1e-10 * hs(a.base()));
  }
}

TEST_CASE("singular values on known matrices") {
  SingularValues nil = singular_values(ComplexMatrix(2, 2, {C(0, 0), C(1, 0), C(0, 0), C(0, 0)}));
  CHECK(close_rel(nil[0], 1.0, 1e-13));
  CHECK(nil[1] <= 1e-13);

  SingularValues ident = singular_values(ComplexMatrix::identity(4));
  for (std::size_t i = 0; i < 4; ++i) CHECK(close_rel(ident[i], 1.0, 1e-13));

  C d[2] = {C(3, 0), C(-4, 0)};
  SingularValues sv = singular_values(ComplexMatrix::diagonal(std::span<const C>(d, 2)));
  CHECK(close_rel(sv[0], 4.0, 1e-13));
  CHECK(close_rel(sv[1], 3.0, 1e-13));
}

TEST_CASE("norm values on known matrices") {
  double d34[2] = {3, 4};
  ComplexMatrix diag34 = ComplexMatrix::diagonal(std::span<const double>(d34));
  CHECK(close_rel(schatten_norm(diag34, 2.0), 5.0, 1e-13));
  CHECK(close_rel(schatten_norm(diag34, 1.0), 7.0, 1e-13));
  CHECK(close_rel(spectral_norm(diag34), 4.0, 1e-13));
  CHECK(schatten_norm(ComplexMatrix(3, 3), 3.5) == 0.0);
  CHECK(hilbert_schmidt_norm(ComplexMatrix(2, 2)) == 0.0);
  CHECK(close_rel(hilbert_schmidt_norm(ComplexMatrix(2, 2, {C(1, 0), C(1, 0), C(1, 0), C(1, 0)})),
                  2.0, 1e-13));
  CHECK(close_rel(hilbert_schmidt_norm(pauli_y()), std::sqrt(2.0), 1e-13));
  CHECK_THROWS_AS(schatten_norm(diag34, 0.99), DomainError);
  CHECK_THROWS_AS(NormSelector::schatten(0.5), DomainError);
  CHECK(NormSelector::from_key("trace").p() == 1.0);
  CHECK(NormSelector::from_key("schatten:3").p() == 3.0);
  CHECK(NormSelector::from_key("spectral").is_spectral());
  CHECK_THROWS_AS(NormSelector::from_key("nuclear"), DomainError);
}

TEST_CASE("schatten 2 agrees with the entrywise norm") {
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    TrialRng trng(307, trial);
    std::size_t n = 1 + static_cast<std::size_t>(trng.u01(0) * 8.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double re, im;
        trng.gaussian_pair(10 + 2 * (i * n + j), re, im);
        m(i, j) = {re, im};
      }
    CHECK(close_rel(schatten_norm(m, 2.0), hilbert_schmidt_norm(m), 1e-12));
  }
}

TEST_CASE("unitary invariance of the implemented norms") {
  for (std::uint64_t trial = 0; trial < 120; ++trial) {
    TrialRng trng(401, trial);
    std::size_t n = 2 + static_cast<std::size_t>(trng.u01(0) * 5.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double re, im;
        trng.gaussian_pair(10 + 2 * (i * n + j), re, im);
        m(i, j) = {re, im};
      }
    ComplexMatrix u = testsupport::random_unitary(trng, n, 2000);
    ComplexMatrix v = testsupport::random_unitary(trng, n, 4000);
    ComplexMatrix rotated = matmul(matmul(u, m), v);
    for (double p : {1.0, 2.0, 3.0}) {
      double base = schatten_norm(m, p);
      CHECK(std::abs(schatten_norm(rotated, p) - base) <= 1e-9 * base);
    }
    double spec = spectral_norm(m);
    CHECK(std::abs(spectral_norm(rotated) - spec) <= 1e-9 * spec);
  }
}

TEST_CASE("norm axioms on random triples") {
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    TrialRng trng(503, trial);
    std::size_t n = 1 + static_cast<std::size_t>(trng.u01(0) * 6.0);
    auto sample = [&](std::uint64_t base) {
      ComplexMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double re, im;
          trng.gaussian_pair(base + 2 * (i * n + j), re, im);
          m(i, j) = {re, im};
        }
      return m;
    };
    ComplexMatrix a = sample(10);
    ComplexMatrix b = sample(1000);
    double c = 2.0 * trng.u01(5000) - 1.0;
    for (double p : {1.0, 2.0, 3.0}) {
      double na = schatten_norm(a, p);
      double nb = schatten_norm(b, p);
      double nsum = schatten_norm(add(a, b), p);
      CHECK(nsum <= na + nb + 1e-10 * (na + nb + 1.0));
      CHECK(close_rel(schatten_norm(scale(c, a), p), std::abs(c) * na, 1e-10));
    }
  }
}

TEST_CASE("matrix document round trip") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    TrialRng trng(601, trial);
    std::size_t rows = 1 + static_cast<std::size_t>(trng.u01(0) * 4.0);
    std::size_t cols = 1 + static_cast<std::size_t>(trng.u01(1) * 4.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        double re, im;
        trng.gaussian_pair(10 + 2 * (i * cols + j), re, im);
        m(i, j) = {re * 1e7, im * 1e-7};
      }
    ComplexMatrix back = parse_matrix(serialize_matrix(m));
    REQUIRE(back.rows() == rows);
    REQUIRE(back.cols() == cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) CHECK(back(i, j) == m(i, j));
  }
  CHECK_THROWS_AS(parse_matrix("not json"), IoError);
  CHECK_THROWS_AS(parse_matrix("{\"rows\":2,\"cols\":2,\"data\":[[1,0]]}"), DomainError);
  CHECK_THROWS_AS(parse_matrix("{\"rows\":1,\"cols\":1,\"data\":[1]}"), IoError);
}

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heinzlab/complex_matrix.hpp"

namespace heinzlab {

/// Singular values in non-increasing order, all non-negative.
class SingularValues {
 public:
  explicit SingularValues(std::vector<double> values);
  std::span<const double> values() const { return values_; }
  double largest() const { return values_.empty() ? 0.0 : values_.front(); }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// s_i = sqrt(lambda_i(A^* A)), clamped at zero, sorted non-increasing.
SingularValues singular_values(const ComplexMatrix& a);

/// (sum s_i^p)^(1/p) for p >= 1.
double schatten_norm(const ComplexMatrix& a, double p);
double schatten_norm(const SingularValues& sv, double p);

/// Entrywise (sum |a_ij|^2)^(1/2); coincides with the Schatten 2-norm.
double hilbert_schmidt_norm(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Selector over the implemented unitarily invariant norms: the Schatten
/// family (p >= 1) and the spectral norm as a distinct member.
class NormSelector {
 public:
  static NormSelector schatten(double p);  // throws DomainError for p < 1
  static NormSelector spectral();
  /// Parses "trace" (= schatten 1), "hs" (= schatten 2), "schatten:<p>", "spectral".
  static NormSelector from_key(std::string_view key);

  bool is_spectral() const { return spectral_; }
  double p() const { return p_; }
  std::string key() const;

  double apply(const ComplexMatrix& a) const;
  double apply(const SingularValues& sv) const;

 private:
  NormSelector(bool spectral, double p) : spectral_(spectral), p_(p) {}
  bool spectral_;
  double p_;
};

}  // namespace heinzlab

#include "heinzlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "heinzlab/errors.hpp"
#include "heinzlab/hermitian_eigen.hpp"

namespace heinzlab {

SingularValues::SingularValues(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] >= 0.0)) throw DomainError("singular values must be non-negative");
    if (i > 0 && values_[i] > values_[i - 1])
      throw DomainError("singular values must be sorted non-increasing");
  }
}

SingularValues singular_values(const ComplexMatrix& a) {
  ComplexMatrix gram = matmul(adjoint(a), a);
  EigenDecomposition eig = hermitian_eigendecomposition(gram);
  std::vector<double> s(eig.eigenvalues.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    s[i] = std::sqrt(std::max(eig.eigenvalues[i], 0.0));
  return SingularValues(std::move(s));
}

double schatten_norm(const SingularValues& sv, double p) {
  if (!(std::isfinite(p) && p >= 1.0))
    throw DomainError("Schatten norm requires p >= 1, got p = " + std::to_string(p));
  if (p == 1.0) {
    double sum = 0.0;
    for (double s : sv.values()) sum += s;
    return sum;
  }
  double sum = 0.0;
  for (double s : sv.values()) sum += std::pow(s, p);
  return std::pow(sum, 1.0 / p);
}

double schatten_norm(const ComplexMatrix& a, double p) {
  if (!(std::isfinite(p) && p >= 1.0))
    throw DomainError("Schatten norm requires p >= 1, got p = " + std::to_string(p));
  return schatten_norm(singular_values(a), p);
}

double hilbert_schmidt_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const auto& e : a.entries()) sum += e.real() * e.real() + e.imag() * e.imag();
  return std::sqrt(sum);
}

double spectral_norm(const ComplexMatrix& a) { return singular_values(a).largest(); }

NormSelector NormSelector::schatten(double p) {
  if (!(std::isfinite(p) && p >= 1.0))
    throw DomainError("Schatten norm requires p >= 1, got p = " + std::to_string(p));
  return NormSelector(false, p);
}

NormSelector NormSelector::spectral() { return NormSelector(true, 0.0); }

NormSelector NormSelector::from_key(std::string_view key) {
  if (key == "trace") return schatten(1.0);
  if (key == "hs") return schatten(2.0);
  if (key == "spectral") return spectral();
  if (key.substr(0, 9) == "schatten:") {
    try {
      size_t used = 0;
      std::string text(key.substr(9));
      double p = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return schatten(p);
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception&) {
      throw DomainError("cannot parse norm key '" + std::string(key) + "'");
    }
  }
  throw DomainError("unknown norm key '" + std::string(key) +
                    "' (expected trace, hs, schatten:<p>, or spectral)");
}

std::string NormSelector::key() const {
  if (spectral_) return "spectral";
  if (p_ == 1.0) return "trace";
  if (p_ == 2.0) return "hs";
  return "schatten:" + std::to_string(p_);
}

double NormSelector::apply(const SingularValues& sv) const {
  if (spectral_) return sv.largest();
  return schatten_norm(sv, p_);
}

double NormSelector::apply(const ComplexMatrix& a) const {
  return apply(singular_values(a));
}

}  // namespace heinzlab

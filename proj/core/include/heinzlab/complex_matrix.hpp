#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace heinzlab {

/// Dense row-major complex matrix with finite entries. Immutable in spirit:
/// operations return new values.
class ComplexMatrix {
 public:
  using value_type = std::complex<double>;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<value_type> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const value_type> d);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const value_type> entries() const { return entries_; }

  /// Throws DomainError if any entry is non-finite.
  void require_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(std::complex<double> c, const ComplexMatrix& a);
ComplexMatrix scale(double c, const ComplexMatrix& a);
ComplexMatrix adjoint(const ComplexMatrix& a);

}  // namespace heinzlab

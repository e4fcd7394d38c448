#pragma once

#include <stdexcept>
#include <string>

namespace heinzlab {

/// Violated domain precondition (bad construction arguments, out-of-range
/// exponents, malformed quadruples). Maps to CLI exit code 3.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Evaluation failed numerically (overflow to infinity, eigensolver
/// non-convergence). Never reported as an inequality violation.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

/// File or document handling failure. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heinzlab

#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "heinzlab/scalar_kernel.hpp"

namespace heinzlab {

/// A strictly increasing convex function on [0, inf) from a closed catalog:
/// power x^p (p >= 1), the exponential e^x, or a scaled power c x^p (c > 0).
/// Catalog members are shape-certified at first registration by sampling a
/// 1024-point log-uniform grid over [1e-6, 1e6]: divided differences must be
/// positive and non-decreasing (compared logarithmically, so the exponential
/// member certifies without overflow). A user-supplied callback is accepted
/// only through `unchecked` and is flagged as such in reports.
class ConvexFunctionSpec {
 public:
  enum class Kind { Power, Exponential, ScaledPower, Unchecked };

  static ConvexFunctionSpec power(double p);
  static ConvexFunctionSpec exponential();
  static ConvexFunctionSpec scaled_power(double c, double p);
  static ConvexFunctionSpec unchecked(std::function<double(double)> fn, std::string label);

  /// Parses "pow:<p>", "exp", or "cpow:<c>:<p>".
  static ConvexFunctionSpec from_key(std::string_view key);

  Kind kind() const { return kind_; }
  double exponent() const { return p_; }
  double scale_coefficient() const { return c_; }
  const std::string& key() const { return key_; }
  bool is_checked() const { return kind_ != Kind::Unchecked; }

  /// phi(x) for x >= 0. Throws EvalError on overflow.
  double eval(double x) const;

  /// phi(hi) - phi(lo) for hi, lo >= 0, stable against cancellation.
  double diff(double hi, double lo) const;

  /// phi(c*hi) - phi(c*lo) where delta = hi - lo is accurately known and c >= 0.
  /// delta may be a few ulps negative; the sign is carried through.
  double diff_scaled(double c, double hi, double lo, double delta) const;

  /// log(phi(c*hi) - phi(c*lo)); -infinity when the gap is zero or negative.
  /// Never overflows, usable where phi itself exceeds the double range.
  double log_diff_scaled(double c, double hi, double lo, double delta) const;

 private:
  ConvexFunctionSpec(Kind kind, double c, double p, std::string key,
                     std::function<double(double)> fn);
  void certify_shape() const;  // throws DomainError if the grid check fails

  Kind kind_;
  double c_ = 1.0;
  double p_ = 1.0;
  std::string key_;
  std::function<double(double)> fn_;
};

/// Points (x, y, z, w) in [0, inf) with w <= z <= x, y <= x and
/// z - w <= x - y, the hypothesis of the difference-dominance gate.
class PointQuadruple {
 public:
  PointQuadruple(double x, double y, double z, double w);  // throws DomainError
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  double w() const { return w_; }

 private:
  double x_, y_, z_, w_;
};

/// The four divided differences
/// (f(z)-f(w))/(z-w), (f(y)-f(w))/(y-w), (f(y)-f(z))/(y-z), (f(x)-f(y))/(x-y)
/// for 0 <= w < z < y < x; non-decreasing for convex f.
std::array<double, 4> slope_chain(const ConvexFunctionSpec& f, double w, double z,
                                  double y, double x);

/// (phi(z)-phi(w), phi(x)-phi(y)); the gate guarantees 0 <= first <= second.
std::array<double, 2> difference_dominance(const ConvexFunctionSpec& f,
                                           const PointQuadruple& q);

/// phi-lifted Young sandwich:
///   phi(r0(a+b)) - phi(2 r0 sqrt(ab)) <= phi(arith) - phi(geo)
///                                     <= phi(R0(a+b)) - phi(2 R0 sqrt(ab)).
SandwichResult phi_young_sandwich(const ConvexFunctionSpec& f, const PositivePair& pair,
                                  const WeightSplit& w);

enum class HeinzVariant { Full, Halved };

/// phi-lifted Heinz sandwich. Full variant:
///   phi(2 r0 (a+b)) - phi(4 r0 sqrt(ab)) <= phi(a+b) - phi(heinz sum) <= ...
/// Halved variant replaces a+b by (a+b)/2 and the Heinz sum by the Heinz mean.
SandwichResult phi_heinz_sandwich(const ConvexFunctionSpec& f, const PositivePair& pair,
                                  const WeightSplit& w,
                                  HeinzVariant variant = HeinzVariant::Full);

}  // namespace heinzlab

#include "heinzlab/convex_gate.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_set>
#include <utility>
#include <vector>

#include "heinzlab/errors.hpp"
#include "heinzlab/stable_math.hpp"

namespace heinzlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_key(ConvexFunctionSpec::Kind kind, double c, double p) {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case ConvexFunctionSpec::Kind::Power:
      os << "pow:" << p;
      break;
    case ConvexFunctionSpec::Kind::Exponential:
      os << "exp";
      break;
    case ConvexFunctionSpec::Kind::ScaledPower:
      os << "cpow:" << c << ":" << p;
      break;
    case ConvexFunctionSpec::Kind::Unchecked:
      os << "unchecked";
      break;
  }
  return os.str();
}

// Keys whose grid certification already passed in this process.
std::unordered_set<std::string>& certified_keys() {
  static std::unordered_set<std::string> keys;
  return keys;
}
std::mutex certified_mutex;

}  // namespace

ConvexFunctionSpec::ConvexFunctionSpec(Kind kind, double c, double p, std::string key,
                                       std::function<double(double)> fn)
    : kind_(kind), c_(c), p_(p), key_(std::move(key)), fn_(std::move(fn)) {}

ConvexFunctionSpec ConvexFunctionSpec::power(double p) {
  if (!(std::isfinite(p) && p >= 1.0))
    throw DomainError("catalog power function requires p >= 1, got " + std::to_string(p));
  ConvexFunctionSpec spec(Kind::Power, 1.0, p, format_key(Kind::Power, 1.0, p), {});
  spec.certify_shape();
  return spec;
}

ConvexFunctionSpec ConvexFunctionSpec::exponential() {
  ConvexFunctionSpec spec(Kind::Exponential, 1.0, 1.0, "exp", {});
  spec.certify_shape();
  return spec;
}

ConvexFunctionSpec ConvexFunctionSpec::scaled_power(double c, double p) {
  if (!(std::isfinite(c) && c > 0.0))
    throw DomainError("scaled power requires c > 0, got " + std::to_string(c));
  if (!(std::isfinite(p) && p >= 1.0))
    throw DomainError("scaled power requires p >= 1, got " + std::to_string(p));
  ConvexFunctionSpec spec(Kind::ScaledPower, c, p, format_key(Kind::ScaledPower, c, p), {});
  spec.certify_shape();
  return spec;
}

ConvexFunctionSpec ConvexFunctionSpec::unchecked(std::function<double(double)> fn,
                                                 std::string label) {
  if (!fn) throw DomainError("unchecked convex function requires a callable");
  return ConvexFunctionSpec(Kind::Unchecked, 1.0, 1.0, "unchecked:" + label, std::move(fn));
}

ConvexFunctionSpec ConvexFunctionSpec::from_key(std::string_view key) {
  if (key == "exp") return exponential();
  auto parse_tail = [&](std::string_view tail, const char* what) {
    try {
      size_t used = 0;
      std::string text(tail);
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw DomainError(std::string("cannot parse ") + what + " in convex function key '" +
                        std::string(key) + "'");
    }
  };
  if (key.substr(0, 4) == "pow:") return power(parse_tail(key.substr(4), "exponent"));
  if (key.substr(0, 5) == "cpow:") {
    std::string_view rest = key.substr(5);
    size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw DomainError("scaled power key must look like cpow:<c>:<p>, got '" +
                        std::string(key) + "'");
    double c = parse_tail(rest.substr(0, colon), "coefficient");
    double p = parse_tail(rest.substr(colon + 1), "exponent");
    return scaled_power(c, p);
  }
  throw DomainError("unknown convex function key '" + std::string(key) +
                    "' (expected pow:<p>, exp, or cpow:<c>:<p>)");
}

double ConvexFunctionSpec::eval(double x) const {
  if (!(x >= 0.0)) throw DomainError("catalog functions are defined on [0, inf)");
  double v = 0;
  switch (kind_) {
    case Kind::Power:
      v = std::pow(x, p_);
      break;
    case Kind::Exponential:
      v = std::exp(x);
      break;
    case Kind::ScaledPower:
      v = c_ * std::pow(x, p_);
      break;
    case Kind::Unchecked:
      v = fn_(x);
      break;
  }
  if (!std::isfinite(v)) throw EvalError("convex function evaluation overflowed at x = " +
                                         std::to_string(x));
  return v;
}

double ConvexFunctionSpec::diff(double hi, double lo) const {
  if (!(hi >= 0.0 && lo >= 0.0))
    throw DomainError("catalog functions are defined on [0, inf)");
  return diff_scaled(1.0, hi, lo, hi - lo);
}

double ConvexFunctionSpec::diff_scaled(double c, double hi, double lo, double delta) const {
  switch (kind_) {
    case Kind::Power:
      return std::pow(c, p_) * num::signed_pow_gap_from_delta(lo, delta, p_);
    case Kind::Exponential: {
      if (delta >= 0.0) return num::exp_gap(c * lo, c * delta);
      return -num::exp_gap(c * hi, -(c * delta));
    }
    case Kind::ScaledPower:
      return c_ * (std::pow(c, p_) * num::signed_pow_gap_from_delta(lo, delta, p_));
    case Kind::Unchecked: {
      double vh = fn_(c * hi);
      double vl = fn_(c * lo);
      if (!std::isfinite(vh) || !std::isfinite(vl))
        throw EvalError("unchecked convex function overflowed");
      return vh - vl;
    }
  }
  return 0.0;
}

double ConvexFunctionSpec::log_diff_scaled(double c, double hi, double lo,
                                           double delta) const {
  if (delta <= 0.0 || c == 0.0) return -kInf;
  switch (kind_) {
    case Kind::Power:
      return p_ * std::log(c) + num::log_pow_gap_from_delta(lo, delta, p_);
    case Kind::Exponential:
      return num::log_exp_gap(c * lo, c * delta);
    case Kind::ScaledPower:
      return std::log(c_) + p_ * std::log(c) +
             num::log_pow_gap_from_delta(lo, delta, p_);
    case Kind::Unchecked: {
      double d = diff_scaled(c, hi, lo, delta);
      return d > 0.0 ? std::log(d) : -kInf;
    }
  }
  return -kInf;
}

void ConvexFunctionSpec::certify_shape() const {
  {
    std::lock_guard<std::mutex> lock(certified_mutex);
    if (certified_keys().count(key_) != 0) return;
  }
  // 1024 log-uniform nodes on [1e-6, 1e6]. Positive increments and
  // non-decreasing divided differences, both tested in log space.
  constexpr int kNodes = 1024;
  constexpr double kSlopeSlack = 1e-9;
  std::vector<double> xs(kNodes);
  for (int i = 0; i < kNodes; ++i)
    xs[i] = std::pow(10.0, -6.0 + 12.0 * static_cast<double>(i) / (kNodes - 1));
  double prev_log_slope = -kInf;
  for (int i = 0; i + 1 < kNodes; ++i) {
    double dx = xs[i + 1] - xs[i];
    double log_inc = log_diff_scaled(1.0, xs[i + 1], xs[i], dx);
    if (!(log_inc > -kInf) || std::isnan(log_inc))
      throw DomainError("convex catalog certification failed for " + key_ +
                        ": increments must be positive");
    double log_slope = log_inc - std::log(dx);
    if (log_slope < prev_log_slope - kSlopeSlack)
      throw DomainError("convex catalog certification failed for " + key_ +
                        ": divided differences decreased");
    prev_log_slope = log_slope;
  }
  std::lock_guard<std::mutex> lock(certified_mutex);
  certified_keys().insert(key_);
}

PointQuadruple::PointQuadruple(double x, double y, double z, double w)
    : x_(x), y_(y), z_(z), w_(w) {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(x) || !finite_nonneg(y) || !finite_nonneg(z) || !finite_nonneg(w))
    throw DomainError("quadruple points must be finite and lie in [0, inf)");
  if (!(w <= z && z <= x))
    throw DomainError("quadruple requires w <= z <= x");
  if (!(y <= x)) throw DomainError("quadruple requires y <= x");
  if (!(z - w <= x - y))
    throw DomainError("quadruple requires z - w <= x - y");
}

std::array<double, 4> slope_chain(const ConvexFunctionSpec& f, double w, double z,
                                  double y, double x) {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(w) || !finite_nonneg(z) || !finite_nonneg(y) || !finite_nonneg(x))
    throw DomainError("slope chain points must be finite and lie in [0, inf)");
  if (!(w < z && z < y && y < x))
    throw DomainError("slope chain requires strictly ordered points w < z < y < x");
  return {
      f.diff(z, w) / (z - w),
      f.diff(y, w) / (y - w),
      f.diff(y, z) / (y - z),
      f.diff(x, y) / (x - y),
  };
}

std::array<double, 2> difference_dominance(const ConvexFunctionSpec& f,
                                           const PointQuadruple& q) {
  return {f.diff(q.z(), q.w()), f.diff(q.x(), q.y())};
}

SandwichResult phi_young_sandwich(const ConvexFunctionSpec& f, const PositivePair& pair,
                                  const WeightSplit& w) {
  num::MeanParts parts = num::mean_parts(pair.a(), pair.b(), w.nu(), w.complement());
  SandwichResult out;
  out.lower = f.diff_scaled(w.r0(), parts.s, parts.g, parts.delta);
  out.middle = f.diff_scaled(1.0, parts.arith, parts.geo, parts.young_gap);
  out.upper = f.diff_scaled(w.R0(), parts.s, parts.g, parts.delta);
  return out;
}

SandwichResult phi_heinz_sandwich(const ConvexFunctionSpec& f, const PositivePair& pair,
                                  const WeightSplit& w, HeinzVariant variant) {
  num::MeanParts parts = num::mean_parts(pair.a(), pair.b(), w.nu(), w.complement());
  SandwichResult out;
  if (variant == HeinzVariant::Full) {
    out.lower = f.diff_scaled(2.0 * w.r0(), parts.s, parts.g, parts.delta);
    out.middle = f.diff_scaled(1.0, parts.s, parts.heinz_sum, parts.heinz_gap);
    out.upper = f.diff_scaled(2.0 * w.R0(), parts.s, parts.g, parts.delta);
  } else {
    out.lower = f.diff_scaled(2.0 * w.r0(), 0.5 * parts.s, 0.5 * parts.g, 0.5 * parts.delta);
    out.middle = f.diff_scaled(1.0, 0.5 * parts.s, 0.5 * parts.heinz_sum, 0.5 * parts.heinz_gap);
    out.upper = f.diff_scaled(2.0 * w.R0(), 0.5 * parts.s, 0.5 * parts.g, 0.5 * parts.delta);
  }
  return out;
}

}  // namespace heinzlab

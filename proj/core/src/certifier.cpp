#include "heinzlab/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>
#include <utility>

#include <json.hpp>

#include "heinzlab/convex_gate.hpp"
#include "heinzlab/errors.hpp"
#include "heinzlab/matrix_io.hpp"
#include "heinzlab/stable_math.hpp"
#include "heinzlab/trial_rng.hpp"

namespace heinzlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 0x1.0p-52;  // 2^-52, one ulp at 1.0
constexpr double kErrorBudget = 1e-3;
constexpr int kShrinkStepCap = 64;
constexpr std::uint64_t kScanStride = 10;  // convexity scan on every 10th trial

// Counter layout of a trial substream. Counters are random-access, so unused
// slots cost nothing.
enum Counter : std::uint64_t {
  kCounterA = 0,
  kCounterB = 1,
  kCounterNuStrategy = 2,
  kCounterNuAnchor = 3,
  kCounterNuOffset = 4,
  kCounterNuSide = 5,
  kCounterNuUniform = 6,
  kCounterM = 7,
  kCounterP = 8,
  kCounterDiagonal = 9,
  kCounterPhi = 10,
  kCounterDim = 11,
  kCounterChainPoints = 12,  // 12..15
  kCounterEntries = 100,
};

constexpr std::array<double, 8> kPhiExponents = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0};

double log_uniform(const TrialConfig& cfg, double u) {
  return std::pow(10.0, cfg.log10_min + u * (cfg.log10_max - cfg.log10_min));
}

double draw_nu(const TrialConfig& cfg, const TrialRng& rng) {
  if (cfg.nu_strategy == NuStrategy::BoundaryWeighted &&
      rng.u01(kCounterNuStrategy) < 0.2) {
    int anchor = std::min(2, static_cast<int>(rng.u01(kCounterNuAnchor) * 3.0));
    double off = 1e-6 * rng.u01_positive(kCounterNuOffset);  // (0, 1e-6]
    switch (anchor) {
      case 0:
        return off;
      case 1:
        return rng.u01(kCounterNuSide) < 0.5 ? 0.5 - off : 0.5 + off;
      default:
        return 1.0 - off;
    }
  }
  return rng.u01(kCounterNuUniform);
}

const std::array<ConvexFunctionSpec, 8>& power_specs() {
  static const std::array<ConvexFunctionSpec, 8> specs = {
      ConvexFunctionSpec::power(kPhiExponents[0]), ConvexFunctionSpec::power(kPhiExponents[1]),
      ConvexFunctionSpec::power(kPhiExponents[2]), ConvexFunctionSpec::power(kPhiExponents[3]),
      ConvexFunctionSpec::power(kPhiExponents[4]), ConvexFunctionSpec::power(kPhiExponents[5]),
      ConvexFunctionSpec::power(kPhiExponents[6]), ConvexFunctionSpec::power(kPhiExponents[7])};
  return specs;
}

const std::array<ConvexFunctionSpec, 8>& scaled_power_specs() {
  static const std::array<ConvexFunctionSpec, 8> specs = {
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[0]),
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[1]),
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[2]),
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[3]),
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[4]),
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[5]),
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[6]),
      ConvexFunctionSpec::scaled_power(2.0, kPhiExponents[7])};
  return specs;
}

const ConvexFunctionSpec& exp_spec() {
  static const ConvexFunctionSpec spec = ConvexFunctionSpec::exponential();
  return spec;
}

const std::array<NormSelector, 4>& norm_selectors() {
  static const std::array<NormSelector, 4> norms = {
      NormSelector::schatten(1.0), NormSelector::schatten(2.0),
      NormSelector::schatten(3.0), NormSelector::spectral()};
  return norms;
}

constexpr std::array<const char*, 4> kNormSuffix = {"tr", "hs", "s3", "sp"};

// ---------------------------------------------------------------------------
// Check registries
// ---------------------------------------------------------------------------

std::vector<CheckInfo> build_scalar_infos() {
  std::vector<CheckInfo> infos = {
      {"eq2", "2", false},          {"eq3", "3", false},
      {"eq4", "4", false},          {"eq5", "5", false},
      {"eq6", "6", false},          {"eq7", "7", false},
      {"eq8", "8", false},          {"eq9", "9", false},
      {"eq10", "10", false},        {"eq11:pow", "11", false},
      {"eq11:exp", "11", true},     {"eq11:cpow", "11", false},
      {"thm21:pow", "T2.1", false}, {"thm21:exp", "T2.1", true},
      {"thm21:cpow", "T2.1", false},
      {"eq14:pow", "14", false},    {"eq14:exp", "14", true},
      {"eq14:cpow", "14", false},   {"eq15", "15", false},
      {"eq16", "16", false},        {"eq17:pow", "17", false},
      {"eq17:exp", "17", true},     {"eq17:cpow", "17", false},
      {"eq17h:pow", "17", false},   {"eq17h:exp", "17", true},
      {"eq17h:cpow", "17", false},  {"eq18", "18", false},
  };
  return infos;
}

std::vector<CheckInfo> build_matrix_infos() {
  std::vector<CheckInfo> infos = {
      {"hs-identity", "21", false}, {"eq19", "19", false},
      {"eq20", "20", false},        {"eq21", "21", false},
      {"thm31:pow", "T3.1", false}, {"thm31:exp", "T3.1", true},
      {"thm31:cpow", "T3.1", false},
      {"thm31-display", "T3.1", false},
      {"thm31-agree", "T3.1", false},
  };
  for (const char* n : kNormSuffix) infos.push_back({std::string("heinz-bounds:") + n, "BD", false});
  for (const char* n : kNormSuffix) infos.push_back({std::string("eq22:") + n, "22", false});
  for (const char* n : kNormSuffix) infos.push_back({std::string("eq23:") + n, "23", false});
  for (const char* n : kNormSuffix) infos.push_back({std::string("eq24:") + n, "24", false});
  for (int q = 1; q <= 3; ++q)
    for (const char* n : kNormSuffix)
      infos.push_back({"cor31:q" + std::to_string(q) + ":" + n, "C3.1", false});
  for (const char* n : kNormSuffix) infos.push_back({std::string("cor31:exp:") + n, "C3.1", true});
  infos.push_back({"diag-oracle", "diag", false});
  infos.push_back({"heinz-scan", "scan", false});
  return infos;
}

// ---------------------------------------------------------------------------
// Judges
// ---------------------------------------------------------------------------

void judge_linear(const double* terms, int n, double tol_rel, double mutate_factor,
                  CheckOutcome& out) {
  std::array<double, 4> t;
  for (int i = 0; i < n; ++i) t[i] = terms[i];
  t[0] *= mutate_factor;
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(t[i]));
  double tol = tol_rel * scale;
  out.status = CheckOutcome::Status::Ok;
  out.slack_count = n - 1;
  out.violated = false;
  out.worst = kInf;
  for (int i = 0; i + 1 < n; ++i) {
    double slack = t[i + 1] - t[i];
    out.slack[i] = slack;
    out.tol[i] = tol;
    if (slack < -tol) out.violated = true;
    out.worst = std::min(out.worst, slack);
  }
}

void judge_log(const double* logs, int n, double tol_rel, double mutate_factor,
               CheckOutcome& out) {
  std::array<double, 4> t;
  for (int i = 0; i < n; ++i) t[i] = logs[i];
  t[0] += std::log(mutate_factor);
  double max_log = 0.0;
  double max_abs_log = 0.0;
  for (int i = 0; i < n; ++i) {
    if (t[i] > max_log) max_log = t[i];
    if (std::isfinite(t[i])) max_abs_log = std::max(max_abs_log, std::abs(t[i]));
  }
  double log_tol = std::log(tol_rel) + max_log;
  // exp amplifies argument rounding into relative error of the value: a
  // log-domain gap cannot be resolved below a few ulps of the log magnitude.
  // An ordering failure inside that band is undecidable at double precision
  // and counts as an evaluation error, never as a violation.
  double noise_floor =
      4.0 * kEps * max_abs_log * (2.0 + std::log(std::max(max_abs_log, 1.0)));
  out.status = CheckOutcome::Status::Ok;
  out.slack_count = n - 1;
  out.violated = false;
  out.worst = kInf;
  for (int i = 0; i + 1 < n; ++i) {
    double lo = t[i];
    double hi = t[i + 1];
    double slack;
    if (lo == -kInf && hi == -kInf) {
      slack = 0.0;  // both gaps are exactly zero
    } else {
      slack = hi - lo;
    }
    out.slack[i] = slack;
    out.tol[i] = tol_rel;
    if (lo > hi) {
      // log of the linear-domain excess lo_value - hi_value
      double excess = lo + std::log(-std::expm1(hi - lo));
      if (excess > log_tol) {
        if (-slack <= noise_floor) {
          out.status = CheckOutcome::Status::Error;
        } else {
          out.violated = true;
        }
      }
    }
    out.worst = std::min(out.worst, slack);
  }
}

// Comparison check: |got - want| <= bound for each component.
void judge_agreement(const double* got, const double* want, const double* bound, int n,
                     CheckOutcome& out) {
  out.status = CheckOutcome::Status::Ok;
  out.slack_count = std::min(n, 3);
  out.violated = false;
  out.worst = kInf;
  double min_slack = kInf;
  for (int i = 0; i < n; ++i) {
    double slack = bound[i] - std::abs(got[i] - want[i]);
    min_slack = std::min(min_slack, slack);
    if (slack < 0.0) out.violated = true;
  }
  for (int i = 0; i < out.slack_count; ++i) {
    out.slack[i] = min_slack;
    out.tol[i] = 0.0;
  }
  out.worst = min_slack;
}

// ---------------------------------------------------------------------------
// Scalar checks
// ---------------------------------------------------------------------------

enum ScalarCheck : int {
  kEq2 = 0, kEq3, kEq4, kEq5, kEq6, kEq7, kEq8, kEq9, kEq10,
  kEq11Pow, kEq11Exp, kEq11Cpow,
  kThm21Pow, kThm21Exp, kThm21Cpow,
  kEq14Pow, kEq14Exp, kEq14Cpow,
  kEq15, kEq16,
  kEq17Pow, kEq17Exp, kEq17Cpow,
  kEq17hPow, kEq17hExp, kEq17hCpow,
  kEq18,
  kScalarCheckCount,
};

double mutate_for(int check, int mutate_index, double factor) {
  return check == mutate_index ? factor : 1.0;
}

}  // namespace

const std::vector<CheckInfo>& scalar_check_infos() {
  static const std::vector<CheckInfo> infos = build_scalar_infos();
  return infos;
}

const std::vector<CheckInfo>& matrix_check_infos() {
  static const std::vector<CheckInfo> infos = build_matrix_infos();
  return infos;
}

void TrialConfig::validate() const {
  if (trials < 1) throw DomainError("trial count must be >= 1");
  if (!(log10_min < log10_max))
    throw DomainError("scalar range requires log10 min < max");
  if (dim_max < 1) throw DomainError("dim_max must be >= 1");
  if (!(tol_rel_scalar > 0.0) || !(tol_rel_matrix > 0.0))
    throw DomainError("tolerances must be positive");
}

ScalarTrial generate_scalar_trial(const TrialConfig& cfg, std::uint64_t index) {
  TrialRng rng(cfg.seed, index);
  double a = log_uniform(cfg, rng.u01(kCounterA));
  double b = log_uniform(cfg, rng.u01(kCounterB));
  double nu = draw_nu(cfg, rng);
  int m = 1 + std::min(11, static_cast<int>(rng.u01(kCounterM) * 12.0));
  double p = std::pow(8.0, rng.u01(kCounterP));
  int phi = std::min<int>(7, static_cast<int>(rng.u01(kCounterPhi) * 8.0));
  std::array<double, 4> points;
  for (int i = 0; i < 4; ++i)
    points[i] = log_uniform(cfg, rng.u01(kCounterChainPoints + i));
  std::sort(points.begin(), points.end());
  return ScalarTrial{PositivePair(a, b), WeightSplit(nu), PowerIndex(m),
                     ExponentP(std::max(1.0, p)), phi, points};
}

namespace {

void eval_phi_sandwich_checks(const ScalarTrial& trial, const num::MeanParts& parts,
                              double tol_rel, int mutate_index, double mutate_factor,
                              std::vector<CheckOutcome>& out) {
  const WeightSplit& w = trial.w;
  double r0 = w.r0();
  double R0 = w.R0();
  struct PhiCase {
    const ConvexFunctionSpec* f;
    int eq11, thm21, eq14, eq17, eq17h;
    bool log_domain;
  };
  const PhiCase cases[3] = {
      {&power_specs()[trial.phi_index], kEq11Pow, kThm21Pow, kEq14Pow, kEq17Pow, kEq17hPow,
       false},
      {&exp_spec(), kEq11Exp, kThm21Exp, kEq14Exp, kEq17Exp, kEq17hExp, true},
      {&scaled_power_specs()[trial.phi_index], kEq11Cpow, kThm21Cpow, kEq14Cpow, kEq17Cpow,
       kEq17hCpow, false},
  };
  for (const PhiCase& pc : cases) {
    const ConvexFunctionSpec& f = *pc.f;
    // (11): slope chain on the sorted draw points.
    {
      CheckOutcome& o = out[pc.eq11];
      const auto& pts = trial.chain_points;
      if (pts[0] < pts[1] && pts[1] < pts[2] && pts[2] < pts[3]) {
        try {
          if (!pc.log_domain) {
            double q[4] = {
                f.diff(pts[1], pts[0]) / (pts[1] - pts[0]),
                f.diff(pts[2], pts[0]) / (pts[2] - pts[0]),
                f.diff(pts[2], pts[1]) / (pts[2] - pts[1]),
                f.diff(pts[3], pts[2]) / (pts[3] - pts[2]),
            };
            judge_linear(q, 4, tol_rel, mutate_for(pc.eq11, mutate_index, mutate_factor), o);
          } else {
            double q[4] = {
                f.log_diff_scaled(1.0, pts[1], pts[0], pts[1] - pts[0]) - std::log(pts[1] - pts[0]),
                f.log_diff_scaled(1.0, pts[2], pts[0], pts[2] - pts[0]) - std::log(pts[2] - pts[0]),
                f.log_diff_scaled(1.0, pts[2], pts[1], pts[2] - pts[1]) - std::log(pts[2] - pts[1]),
                f.log_diff_scaled(1.0, pts[3], pts[2], pts[3] - pts[2]) - std::log(pts[3] - pts[2]),
            };
            judge_log(q, 4, tol_rel, mutate_for(pc.eq11, mutate_index, mutate_factor), o);
          }
        } catch (const EvalError&) {
          o.status = CheckOutcome::Status::Error;
        }
      }
    }
    // (14) and Theorem 2.1 on its proof quadruple; (17) full and halved.
    try {
      if (!pc.log_domain) {
        double lower = f.diff_scaled(r0, parts.s, parts.g, parts.delta);
        double middle = f.diff_scaled(1.0, parts.arith, parts.geo, parts.young_gap);
        double upper = f.diff_scaled(R0, parts.s, parts.g, parts.delta);
        double tri[3] = {lower, middle, upper};
        judge_linear(tri, 3, tol_rel, mutate_for(pc.eq14, mutate_index, mutate_factor),
                     out[pc.eq14]);
        double duo[2] = {lower, middle};
        judge_linear(duo, 2, tol_rel, mutate_for(pc.thm21, mutate_index, mutate_factor),
                     out[pc.thm21]);
        double h_lower = f.diff_scaled(2.0 * r0, parts.s, parts.g, parts.delta);
        double h_middle = f.diff_scaled(1.0, parts.s, parts.heinz_sum, parts.heinz_gap);
        double h_upper = f.diff_scaled(2.0 * R0, parts.s, parts.g, parts.delta);
        double htri[3] = {h_lower, h_middle, h_upper};
        judge_linear(htri, 3, tol_rel, mutate_for(pc.eq17, mutate_index, mutate_factor),
                     out[pc.eq17]);
        double hh_lower =
            f.diff_scaled(2.0 * r0, 0.5 * parts.s, 0.5 * parts.g, 0.5 * parts.delta);
        double hh_middle = f.diff_scaled(1.0, 0.5 * parts.s, 0.5 * parts.heinz_sum,
                                         0.5 * parts.heinz_gap);
        double hh_upper =
            f.diff_scaled(2.0 * R0, 0.5 * parts.s, 0.5 * parts.g, 0.5 * parts.delta);
        double hhtri[3] = {hh_lower, hh_middle, hh_upper};
        judge_linear(hhtri, 3, tol_rel, mutate_for(pc.eq17h, mutate_index, mutate_factor),
                     out[pc.eq17h]);
      } else {
        double lower = f.log_diff_scaled(r0, parts.s, parts.g, parts.delta);
        double middle = f.log_diff_scaled(1.0, parts.arith, parts.geo, parts.young_gap);
        double upper = f.log_diff_scaled(R0, parts.s, parts.g, parts.delta);
        double tri[3] = {lower, middle, upper};
        judge_log(tri, 3, tol_rel, mutate_for(pc.eq14, mutate_index, mutate_factor),
                  out[pc.eq14]);
        double duo[2] = {lower, middle};
        judge_log(duo, 2, tol_rel, mutate_for(pc.thm21, mutate_index, mutate_factor),
                  out[pc.thm21]);
        double h_lower = f.log_diff_scaled(2.0 * r0, parts.s, parts.g, parts.delta);
        double h_middle = f.log_diff_scaled(1.0, parts.s, parts.heinz_sum, parts.heinz_gap);
        double h_upper = f.log_diff_scaled(2.0 * R0, parts.s, parts.g, parts.delta);
        double htri[3] = {h_lower, h_middle, h_upper};
        judge_log(htri, 3, tol_rel, mutate_for(pc.eq17, mutate_index, mutate_factor),
                  out[pc.eq17]);
        double hh_lower =
            f.log_diff_scaled(2.0 * r0, 0.5 * parts.s, 0.5 * parts.g, 0.5 * parts.delta);
        double hh_middle = f.log_diff_scaled(1.0, 0.5 * parts.s, 0.5 * parts.heinz_sum,
                                             0.5 * parts.heinz_gap);
        double hh_upper =
            f.log_diff_scaled(2.0 * R0, 0.5 * parts.s, 0.5 * parts.g, 0.5 * parts.delta);
        double hhtri[3] = {hh_lower, hh_middle, hh_upper};
        judge_log(hhtri, 3, tol_rel, mutate_for(pc.eq17h, mutate_index, mutate_factor),
                  out[pc.eq17h]);
      }
    } catch (const EvalError&) {
      out[pc.eq14].status = CheckOutcome::Status::Error;
      out[pc.thm21].status = CheckOutcome::Status::Error;
      out[pc.eq17].status = CheckOutcome::Status::Error;
      out[pc.eq17h].status = CheckOutcome::Status::Error;
    }
  }
}

}  // namespace

void evaluate_scalar_checks(const ScalarTrial& trial, double tol_rel, int mutate_index,
                            double mutate_factor, std::vector<CheckOutcome>& out) {
  out.assign(kScalarCheckCount, CheckOutcome{});
  const PositivePair& pair = trial.pair;
  const WeightSplit& w = trial.w;
  double r0 = w.r0();
  double R0 = w.R0();
  num::MeanParts parts = num::mean_parts(pair.a(), pair.b(), w.nu(), w.complement());

  try {
    // (2)-(4): Young sandwich.
    double l1 = r0 * parts.delta;
    double u1 = R0 * parts.delta;
    double m1 = parts.young_gap;
    {
      double duo[2] = {l1, m1};
      judge_linear(duo, 2, tol_rel, mutate_for(kEq2, mutate_index, mutate_factor), out[kEq2]);
    }
    {
      double duo[2] = {m1, u1};
      judge_linear(duo, 2, tol_rel, mutate_for(kEq3, mutate_index, mutate_factor), out[kEq3]);
    }
    {
      double tri[3] = {l1, m1, u1};
      judge_linear(tri, 3, tol_rel, mutate_for(kEq4, mutate_index, mutate_factor), out[kEq4]);
    }
    // (5)-(7): squared sandwich.
    double bracket2 = num::pow_gap_from_delta(parts.g, parts.delta, 2.0);
    double l2 = (r0 * r0) * bracket2;
    double u2 = (R0 * R0) * bracket2;
    double m2 = num::signed_pow_gap_from_delta(parts.geo, parts.young_gap, 2.0);
    {
      double duo[2] = {l2, m2};
      judge_linear(duo, 2, tol_rel, mutate_for(kEq5, mutate_index, mutate_factor), out[kEq5]);
    }
    {
      double duo[2] = {m2, u2};
      judge_linear(duo, 2, tol_rel, mutate_for(kEq6, mutate_index, mutate_factor), out[kEq6]);
    }
    {
      double tri[3] = {l2, m2, u2};
      judge_linear(tri, 3, tol_rel, mutate_for(kEq7, mutate_index, mutate_factor), out[kEq7]);
    }
    // (8) and (16): the m-th power chain.
    double m_real = static_cast<double>(trial.m.m());
    double half_gap =
        num::pow_gap(std::max(pair.a(), pair.b()), std::min(pair.a(), pair.b()), 0.5 * m_real);
    double t1 = std::pow(r0, m_real) * (half_gap * half_gap);
    double bracket_m = num::pow_gap_from_delta(parts.g, parts.delta, m_real);
    double t2 = std::pow(r0, m_real) * bracket_m;
    double t3 = num::signed_pow_gap_from_delta(parts.geo, parts.young_gap, m_real);
    double t4 = std::pow(R0, m_real) * bracket_m;
    {
      double duo[2] = {t1, t3};
      judge_linear(duo, 2, tol_rel, mutate_for(kEq8, mutate_index, mutate_factor), out[kEq8]);
    }
    {
      double quad[4] = {t1, t2, t3, t4};
      judge_linear(quad, 4, tol_rel, mutate_for(kEq16, mutate_index, mutate_factor),
                   out[kEq16]);
    }
    // (9)-(10): Heinz sandwiches.
    {
      double tri[3] = {2.0 * r0 * parts.delta, parts.heinz_gap, 2.0 * R0 * parts.delta};
      judge_linear(tri, 3, tol_rel, mutate_for(kEq9, mutate_index, mutate_factor), out[kEq9]);
    }
    {
      double half = 0.5 * parts.delta;
      double tri[3] = {2.0 * r0 * half, 0.5 * parts.heinz_gap, 2.0 * R0 * half};
      judge_linear(tri, 3, tol_rel, mutate_for(kEq10, mutate_index, mutate_factor),
                   out[kEq10]);
    }
    // (15): continuous-p sandwich at the trial exponent.
    {
      double p = trial.p.p();
      double bracket_p = num::pow_gap_from_delta(parts.g, parts.delta, p);
      double tri[3] = {std::pow(r0, p) * bracket_p,
                       num::signed_pow_gap_from_delta(parts.geo, parts.young_gap, p),
                       std::pow(R0, p) * bracket_p};
      judge_linear(tri, 3, tol_rel, mutate_for(kEq15, mutate_index, mutate_factor),
                   out[kEq15]);
    }
    // (18): Heinz power sandwich at the trial exponent.
    {
      double p = trial.p.p();
      double bracket_p = num::pow_gap_from_delta(parts.g, parts.delta, p);
      double tri[3] = {std::pow(2.0 * r0, p) * bracket_p,
                       num::signed_pow_gap_from_delta(parts.heinz_sum, parts.heinz_gap, p),
                       std::pow(2.0 * R0, p) * bracket_p};
      judge_linear(tri, 3, tol_rel, mutate_for(kEq18, mutate_index, mutate_factor),
                   out[kEq18]);
    }
  } catch (const EvalError&) {
    for (int i = 0; i <= kEq10; ++i) out[i].status = CheckOutcome::Status::Error;
    out[kEq15].status = CheckOutcome::Status::Error;
    out[kEq16].status = CheckOutcome::Status::Error;
    out[kEq18].status = CheckOutcome::Status::Error;
  }

  eval_phi_sandwich_checks(trial, parts, tol_rel, mutate_index, mutate_factor, out);
}

// ---------------------------------------------------------------------------
// Matrix trials
// ---------------------------------------------------------------------------

namespace {

ComplexMatrix gaussian_matrix(const TrialRng& rng, std::size_t n, std::uint64_t base) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re, im;
      rng.gaussian_pair(base + 2 * (i * n + j), re, im);
      g(i, j) = {re, im};
    }
  return g;
}

ComplexMatrix psd_from_gaussian(const ComplexMatrix& g) {
  ComplexMatrix a = matmul(adjoint(g), g);
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += 1e-8;
  return a;
}

struct RawMatrixTrial {
  std::size_t n;
  bool diagonal;
  double nu;
  double p;
  int phi;
  std::vector<double> diag_a, diag_b;
  std::vector<std::complex<double>> diag_x;
  ComplexMatrix a, b, x;
};

RawMatrixTrial raw_matrix_trial(const TrialConfig& cfg, std::uint64_t index) {
  TrialRng rng(cfg.seed, index);
  RawMatrixTrial raw;
  raw.n = 1 + std::min<std::size_t>(cfg.dim_max - 1,
                                    static_cast<std::size_t>(rng.u01(kCounterDim) * cfg.dim_max));
  raw.diagonal = rng.u01(kCounterDiagonal) < 0.2;
  raw.nu = draw_nu(cfg, rng);
  raw.p = std::max(1.0, std::pow(8.0, rng.u01(kCounterP)));
  raw.phi = std::min<int>(7, static_cast<int>(rng.u01(kCounterPhi) * 8.0));
  std::size_t n = raw.n;
  if (raw.diagonal) {
    raw.diag_a.resize(n);
    raw.diag_b.resize(n);
    raw.diag_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double re, im;
      rng.gaussian_pair(kCounterEntries + 2 * i, re, im);
      raw.diag_a[i] = re * re + im * im + 1e-8;
      rng.gaussian_pair(kCounterEntries + 2 * n + 2 * i, re, im);
      raw.diag_b[i] = re * re + im * im + 1e-8;
      rng.gaussian_pair(kCounterEntries + 4 * n + 2 * i, re, im);
      raw.diag_x[i] = {re, im};
    }
    raw.a = ComplexMatrix::diagonal(std::span<const double>(raw.diag_a));
    raw.b = ComplexMatrix::diagonal(std::span<const double>(raw.diag_b));
    raw.x = ComplexMatrix::diagonal(std::span<const std::complex<double>>(raw.diag_x));
  } else {
    raw.a = psd_from_gaussian(gaussian_matrix(rng, n, kCounterEntries));
    raw.b = psd_from_gaussian(gaussian_matrix(rng, n, kCounterEntries + 2 * n * n));
    raw.x = gaussian_matrix(rng, n, kCounterEntries + 4 * n * n);
  }
  return raw;
}

}  // namespace

MatrixTrialData generate_matrix_trial_data(const TrialConfig& cfg, std::uint64_t index) {
  RawMatrixTrial raw = raw_matrix_trial(cfg, index);
  MatrixTrialData data{
      MatrixTriple(PsdMatrix(raw.a), PsdMatrix(raw.b), raw.x),
      WeightSplit(raw.nu),
      ExponentP(raw.p),
      raw.phi,
      raw.diagonal,
      std::move(raw.diag_a),
      std::move(raw.diag_b),
      std::move(raw.diag_x)};
  return data;
}

MatrixTriple generate_matrix_trial(const TrialConfig& cfg, std::uint64_t index) {
  RawMatrixTrial raw = raw_matrix_trial(cfg, index);
  return MatrixTriple(PsdMatrix(raw.a), PsdMatrix(raw.b), raw.x);
}

// ---------------------------------------------------------------------------
// Matrix checks
// ---------------------------------------------------------------------------

namespace {

enum MatrixCheck : int {
  kHsIdentity = 0, kEq19, kEq20, kEq21,
  kThm31Pow, kThm31Exp, kThm31Cpow, kThm31Display, kThm31Agree,
  kHeinzBounds0,          // 4 norms
  kEq22First = 13,        // 4 norms
  kEq23First = 17,
  kEq24First = 21,
  kCor31First = 25,       // q = 1..3 x 4 norms
  kCor31ExpFirst = 37,    // 4 norms
  kDiagOracle = 41,
  kHeinzScan = 42,
  kMatrixCheckCount = 43,
};

void eval_diag_oracle(const MatrixTrialData& trial, const TripleWorkspace& ws,
                      CheckOutcome& out) {
  const WeightSplit& w = trial.w;
  std::size_t n = trial.diag_a.size();
  double S2 = 0, T2 = 0, A2 = 0, G2 = 0, D2 = 0;
  std::vector<double> fs(n), fh(n), ft(n);
  WeightSplit half(0.5);
  // Per-entry products mirror the matrix route: scale the complex x entry by
  // the scalar factor, then take the modulus.
  auto mag2 = [](double f, std::complex<double> x) {
    double re = f * x.real();
    double im = f * x.imag();
    return re * re + im * im;
  };
  for (std::size_t i = 0; i < n; ++i) {
    PositivePair pair(trial.diag_a[i], trial.diag_b[i]);
    std::complex<double> x = trial.diag_x[i];
    double s = pair.a() + pair.b();
    double gh = weighted_geometric(pair, half);
    double ar = weighted_arithmetic(pair, w);
    double ge = weighted_geometric(pair, w);
    double hz = 2.0 * heinz_mean(pair, w);
    S2 += mag2(s, x);
    T2 += mag2(gh, x);
    A2 += mag2(ar, x);
    G2 += mag2(ge, x);
    // |a x - x b|^2 with the products rounded before the subtraction, the
    // same shape the matrix route has.
    double dre = pair.a() * x.real() - x.real() * pair.b();
    double dim = pair.a() * x.imag() - x.imag() * pair.b();
    D2 += dre * dre + dim * dim;
    fs[i] = std::sqrt(mag2(s, x));
    fh[i] = std::sqrt(mag2(hz, x));
    ft[i] = std::sqrt(mag2(gh, x));
  }
  // Norm aggregations in index order.
  auto agg_norm = [&](const std::vector<double>& f, const NormSelector& nsel) {
    if (nsel.is_spectral()) {
      double mx = 0;
      for (double v : f) mx = std::max(mx, v);
      return mx;
    }
    double p = nsel.p();
    if (p == 1.0) {
      double sum = 0;
      for (double v : f) sum += v;
      return sum;
    }
    double sum = 0;
    for (double v : f) sum += std::pow(v, p);
    return std::pow(sum, 1.0 / p);
  };

  std::array<double, 17> got{}, want{}, bound{};
  int k = 0;
  auto push = [&](double g, double wnt, double mass) {
    got[k] = g;
    want[k] = wnt;
    bound[k] = 8.0 * kEps * mass;
    ++k;
  };
  push(ws.hs2_sum, S2, S2);
  push(ws.hs2_half, T2, T2);
  push(ws.hs2_arith, A2, A2);
  push(ws.hs2_geo, G2, G2);
  push(ws.hs2_diff, D2, D2);
  for (const NormSelector& nsel : norm_selectors()) {
    double sN = agg_norm(fs, nsel);
    double hN = agg_norm(fh, nsel);
    double tN = agg_norm(ft, nsel);
    push(nsel.apply(ws.sv_sum), sN, sN);
    push(nsel.apply(ws.sv_heinz), hN, hN);
    push(nsel.apply(ws.sv_half), tN, tN);
  }
  judge_agreement(got.data(), want.data(), bound.data(), k, out);
}

}  // namespace

void evaluate_matrix_checks(const MatrixTrialData& trial, double tol_rel, bool run_scan,
                            int mutate_index, double mutate_factor,
                            std::vector<CheckOutcome>& out) {
  out.assign(kMatrixCheckCount, CheckOutcome{});
  const WeightSplit& w = trial.w;
  double r0 = w.r0();
  double R0 = w.R0();

  TripleWorkspace ws = [&]() -> TripleWorkspace {
    return make_triple_workspace(trial.triple, w);
  }();

  double bracket2 = ws.hs2_sum - 4.0 * ws.hs2_half;
  // Identity residual against its declared bound.
  {
    double residual = std::abs(ws.hs2_diff - bracket2) *
                      mutate_for(kHsIdentity, mutate_index, mutate_factor);
    double bound = kIdentityTolerance * (ws.hs2_sum + 1.0);
    double got[1] = {residual};
    double want[1] = {0.0};
    double b[1] = {bound};
    judge_agreement(got, want, b, 1, out[kHsIdentity]);
  }
  // (19)-(21).
  {
    double l = (r0 * r0) * bracket2;
    double m = ws.hs2_arith - ws.hs2_geo;
    double u = (R0 * R0) * bracket2;
    double duo1[2] = {l, m};
    judge_linear(duo1, 2, tol_rel, mutate_for(kEq19, mutate_index, mutate_factor), out[kEq19]);
    double duo2[2] = {m, u};
    judge_linear(duo2, 2, tol_rel, mutate_for(kEq20, mutate_index, mutate_factor), out[kEq20]);
    double tri[3] = {l, m, u};
    judge_linear(tri, 3, tol_rel, mutate_for(kEq21, mutate_index, mutate_factor), out[kEq21]);
  }
  // Theorem 3.1, theorem form, three catalog members.
  {
    double mid_delta = ws.hs2_arith - ws.hs2_geo;
    struct Case {
      const ConvexFunctionSpec* f;
      int check;
      bool log_domain;
    };
    const Case cases[3] = {{&power_specs()[trial.phi_index], kThm31Pow, false},
                           {&exp_spec(), kThm31Exp, true},
                           {&scaled_power_specs()[trial.phi_index], kThm31Cpow, false}};
    for (const Case& c : cases) {
      try {
        if (!c.log_domain) {
          double tri[3] = {
              c.f->diff_scaled(r0 * r0, ws.hs2_sum, 4.0 * ws.hs2_half, bracket2),
              c.f->diff_scaled(1.0, ws.hs2_arith, ws.hs2_geo, mid_delta),
              c.f->diff_scaled(R0 * R0, ws.hs2_sum, 4.0 * ws.hs2_half, bracket2)};
          judge_linear(tri, 3, tol_rel, mutate_for(c.check, mutate_index, mutate_factor),
                       out[c.check]);
        } else {
          double tri[3] = {
              c.f->log_diff_scaled(r0 * r0, ws.hs2_sum, 4.0 * ws.hs2_half, bracket2),
              c.f->log_diff_scaled(1.0, ws.hs2_arith, ws.hs2_geo, mid_delta),
              c.f->log_diff_scaled(R0 * R0, ws.hs2_sum, 4.0 * ws.hs2_half, bracket2)};
          judge_log(tri, 3, tol_rel, mutate_for(c.check, mutate_index, mutate_factor),
                    out[c.check]);
        }
      } catch (const EvalError&) {
        out[c.check].status = CheckOutcome::Status::Error;
      }
    }
  }
  // Theorem 3.1 power display (p = 2q on unsquared norms) and form agreement.
  {
    const ConvexFunctionSpec& f = power_specs()[trial.phi_index];
    double q = f.exponent();
    double p = 2.0 * q;
    double norm_sum = std::sqrt(ws.hs2_sum);
    double norm_half2 = 2.0 * std::sqrt(ws.hs2_half);
    double norm_arith = std::sqrt(ws.hs2_arith);
    double norm_geo = std::sqrt(ws.hs2_geo);
    try {
      double display_bracket = num::pow_gap(norm_sum, norm_half2, p);
      double disp[3] = {std::pow(r0, p) * display_bracket,
                        num::pow_gap(norm_arith, norm_geo, p),
                        std::pow(R0, p) * display_bracket};
      judge_linear(disp, 3, tol_rel, mutate_for(kThm31Display, mutate_index, mutate_factor),
                   out[kThm31Display]);
      double mid_delta = ws.hs2_arith - ws.hs2_geo;
      double thm[3] = {f.diff_scaled(r0 * r0, ws.hs2_sum, 4.0 * ws.hs2_half, bracket2),
                       f.diff_scaled(1.0, ws.hs2_arith, ws.hs2_geo, mid_delta),
                       f.diff_scaled(R0 * R0, ws.hs2_sum, 4.0 * ws.hs2_half, bracket2)};
      double scale = 1.0;
      for (double v : thm) scale = std::max(scale, std::abs(v));
      double bounds[3] = {tol_rel * scale, tol_rel * scale, tol_rel * scale};
      judge_agreement(thm, disp, bounds, 3, out[kThm31Agree]);
    } catch (const EvalError&) {
      out[kThm31Display].status = CheckOutcome::Status::Error;
      out[kThm31Agree].status = CheckOutcome::Status::Error;
    }
  }
  // Heinz norm family per selector.
  for (int ni = 0; ni < 4; ++ni) {
    const NormSelector& nsel = norm_selectors()[ni];
    double tN = nsel.apply(ws.sv_half);
    double hN = nsel.apply(ws.sv_heinz);
    double sN = nsel.apply(ws.sv_sum);
    double bracket = sN - 2.0 * tN;
    {
      double tri[3] = {2.0 * tN, hN, sN};
      judge_linear(tri, 3, tol_rel,
                   mutate_for(kHeinzBounds0 + ni, mutate_index, mutate_factor),
                   out[kHeinzBounds0 + ni]);
    }
    double l = 2.0 * r0 * bracket;
    double m = sN - hN;
    double u = 2.0 * R0 * bracket;
    {
      double duo[2] = {l, m};
      judge_linear(duo, 2, tol_rel, mutate_for(kEq22First + ni, mutate_index, mutate_factor),
                   out[kEq22First + ni]);
    }
    {
      double duo[2] = {m, u};
      judge_linear(duo, 2, tol_rel, mutate_for(kEq23First + ni, mutate_index, mutate_factor),
                   out[kEq23First + ni]);
    }
    {
      double tri[3] = {l, m, u};
      judge_linear(tri, 3, tol_rel, mutate_for(kEq24First + ni, mutate_index, mutate_factor),
                   out[kEq24First + ni]);
    }
    for (int q = 1; q <= 3; ++q) {
      int check = kCor31First + (q - 1) * 4 + ni;
      const ConvexFunctionSpec& f = power_specs()[q == 1 ? 0 : (q == 2 ? 2 : 4)];
      double tri[3] = {f.diff_scaled(2.0 * r0, sN, 2.0 * tN, bracket),
                       f.diff_scaled(1.0, sN, hN, m),
                       f.diff_scaled(2.0 * R0, sN, 2.0 * tN, bracket)};
      judge_linear(tri, 3, tol_rel, mutate_for(check, mutate_index, mutate_factor),
                   out[check]);
    }
    {
      int check = kCor31ExpFirst + ni;
      const ConvexFunctionSpec& f = exp_spec();
      double tri[3] = {f.log_diff_scaled(2.0 * r0, sN, 2.0 * tN, bracket),
                       f.log_diff_scaled(1.0, sN, hN, m),
                       f.log_diff_scaled(2.0 * R0, sN, 2.0 * tN, bracket)};
      judge_log(tri, 3, tol_rel, mutate_for(check, mutate_index, mutate_factor), out[check]);
    }
  }
  // Diagonal-reduction oracle.
  if (trial.diagonal) eval_diag_oracle(trial, ws, out[kDiagOracle]);
  // Convexity scan on the sampled sub-stream.
  if (run_scan) {
    ConvexityScan scan = heinz_convexity_scan(trial.triple, norm_selectors()[0], 33);
    CheckOutcome& o = out[kHeinzScan];
    o.status = CheckOutcome::Status::Ok;
    o.slack_count = 3;
    double center = 0.5 * (33 - 1);
    double dist = std::abs(static_cast<double>(scan.argmin_index) - center);
    o.slack[0] = scan.min_second_difference;
    o.tol[0] = kConvexityTolerance * scan.max_value;
    o.slack[1] = -scan.max_symmetry_gap;
    o.tol[1] = kSymmetryTolerance * scan.max_value;
    o.slack[2] = 1.0 - dist;
    o.tol[2] = 1e-9;
    o.violated = !(scan.convex_ok && scan.symmetric_ok && scan.argmin_ok);
    o.worst = std::min({o.slack[0], o.slack[1], o.slack[2]});
  }
}

// ---------------------------------------------------------------------------
// certify() driver
// ---------------------------------------------------------------------------

namespace {

int resolve_threads(const CertifyOptions& opts) {
  if (opts.threads > 0) return std::min(opts.threads, 64);
  if (const char* env = std::getenv("HEINZLAB_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

struct CheckAccumulator {
  std::uint64_t count = 0;
  std::uint64_t equality = 0;
  std::uint64_t errors = 0;
  std::uint64_t violations = 0;
  double min_lower = kInf;
  double min_upper = kInf;
  std::vector<double> lowers;
  std::vector<double> uppers;
  std::vector<std::pair<std::uint64_t, double>> violation_list;  // (index, worst)
};

void accumulate(CheckAccumulator& acc, std::uint64_t index, const CheckOutcome& o) {
  switch (o.status) {
    case CheckOutcome::Status::Skip:
      return;
    case CheckOutcome::Status::Error:
      acc.errors += 1;
      return;
    case CheckOutcome::Status::Ok:
      break;
  }
  acc.count += 1;
  double lower = o.slack[0];
  double upper = o.slack[o.slack_count - 1];
  acc.min_lower = std::min(acc.min_lower, lower);
  acc.min_upper = std::min(acc.min_upper, upper);
  acc.lowers.push_back(lower);
  acc.uppers.push_back(upper);
  bool equality = false;
  for (int i = 0; i < o.slack_count; ++i)
    if (o.slack[i] <= o.tol[i]) equality = true;
  if (equality) acc.equality += 1;
  if (o.violated) {
    acc.violations += 1;
    acc.violation_list.emplace_back(index, o.worst);
  }
}

double median_of(std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t k = (v.size() - 1) / 2;
  std::nth_element(v.begin(), v.begin() + k, v.end());
  return v[k];
}

int find_check_index(const std::vector<CheckInfo>& infos, const std::string& id) {
  for (std::size_t i = 0; i < infos.size(); ++i)
    if (infos[i].id == id) return static_cast<int>(i);
  return -1;
}

std::string serialize_scalar_inputs(const ScalarTrial& t) {
  nlohmann::ordered_json j;
  j["a"] = t.pair.a();
  j["b"] = t.pair.b();
  j["nu"] = t.w.nu();
  j["m"] = t.m.m();
  j["p"] = t.p.p();
  return j.dump();
}

std::string serialize_matrix_inputs(const MatrixTrialData& t) {
  nlohmann::ordered_json j;
  j["n"] = t.triple.dim();
  j["diagonal"] = t.diagonal;
  j["nu"] = t.w.nu();
  j["p"] = t.p.p();
  j["A"] = nlohmann::ordered_json::parse(serialize_matrix(t.triple.A.base()));
  j["B"] = nlohmann::ordered_json::parse(serialize_matrix(t.triple.B.base()));
  j["X"] = nlohmann::ordered_json::parse(serialize_matrix(t.triple.X));
  return j.dump();
}

struct SuiteRun {
  std::vector<CheckAccumulator> accs;
  std::uint64_t error_trials = 0;
};

template <typename EvalFn>
SuiteRun run_lanes(const TrialConfig& cfg, int nchecks, int threads, EvalFn&& eval) {
  std::uint64_t trials = cfg.trials;
  int lanes = static_cast<int>(std::min<std::uint64_t>(threads, trials));
  std::vector<SuiteRun> partial(lanes);
  for (auto& p : partial) p.accs.resize(nchecks);
  std::uint64_t chunk = (trials + lanes - 1) / lanes;

  auto work = [&](int lane) {
    std::uint64_t begin = lane * chunk;
    std::uint64_t end = std::min(trials, begin + chunk);
    std::vector<CheckOutcome> outcomes;
    for (std::uint64_t i = begin; i < end; ++i) {
      bool trial_error = false;
      eval(i, outcomes, trial_error);
      for (int c = 0; c < nchecks; ++c) accumulate(partial[lane].accs[c], i, outcomes[c]);
      if (trial_error) partial[lane].error_trials += 1;
    }
  };

  if (lanes == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(lanes);
    for (int lane = 0; lane < lanes; ++lane) pool.emplace_back(work, lane);
    for (auto& th : pool) th.join();
  }

  SuiteRun merged;
  merged.accs.resize(nchecks);
  for (int lane = 0; lane < lanes; ++lane) {
    merged.error_trials += partial[lane].error_trials;
    for (int c = 0; c < nchecks; ++c) {
      CheckAccumulator& dst = merged.accs[c];
      CheckAccumulator& src = partial[lane].accs[c];
      dst.count += src.count;
      dst.equality += src.equality;
      dst.errors += src.errors;
      dst.violations += src.violations;
      dst.min_lower = std::min(dst.min_lower, src.min_lower);
      dst.min_upper = std::min(dst.min_upper, src.min_upper);
      dst.lowers.insert(dst.lowers.end(), src.lowers.begin(), src.lowers.end());
      dst.uppers.insert(dst.uppers.end(), src.uppers.begin(), src.uppers.end());
      dst.violation_list.insert(dst.violation_list.end(), src.violation_list.begin(),
                                src.violation_list.end());
      src = CheckAccumulator{};
    }
  }
  return merged;
}

struct ShrinkOutcome {
  std::string inputs;
  double slack = 0;
  int steps = 0;
};

bool scalar_check_violates(const ScalarTrial& t, double tol_rel, int check, int mutate_index,
                           double mutate_factor, double& worst) {
  std::vector<CheckOutcome> outcomes;
  evaluate_scalar_checks(t, tol_rel, mutate_index, mutate_factor, outcomes);
  worst = outcomes[check].worst;
  return outcomes[check].status == CheckOutcome::Status::Ok && outcomes[check].violated;
}

ShrinkOutcome shrink_scalar(const TrialConfig& cfg, int check, ScalarTrial trial,
                            int mutate_index, double mutate_factor) {
  double worst = 0;
  scalar_check_violates(trial, cfg.tol_rel_scalar, check, mutate_index, mutate_factor, worst);
  int steps = 0;
  for (; steps < kShrinkStepCap; ++steps) {
    bool moved = false;
    double a = trial.pair.a(), b = trial.pair.b(), nu = trial.w.nu();
    double mid = std::sqrt(a) * std::sqrt(b);
    double anchor = nu < 0.25 ? 0.0 : (nu < 0.75 ? 0.5 : 1.0);
    struct Move {
      double a, b, nu;
    };
    const Move moves[3] = {{mid, b, nu}, {a, mid, nu}, {a, b, 0.5 * (nu + anchor)}};
    for (const Move& mv : moves) {
      if (mv.a == a && mv.b == b && mv.nu == nu) continue;
      ScalarTrial candidate{PositivePair(mv.a, mv.b), WeightSplit(mv.nu), trial.m, trial.p,
                            trial.phi_index, trial.chain_points};
      double cand_worst = 0;
      if (scalar_check_violates(candidate, cfg.tol_rel_scalar, check, mutate_index,
                                mutate_factor, cand_worst)) {
        trial = candidate;
        worst = cand_worst;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {serialize_scalar_inputs(trial), worst, steps};
}

bool matrix_check_violates(const MatrixTrialData& t, double tol_rel, bool run_scan, int check,
                           int mutate_index, double mutate_factor, double& worst) {
  std::vector<CheckOutcome> outcomes;
  evaluate_matrix_checks(t, tol_rel, run_scan, mutate_index, mutate_factor, outcomes);
  worst = outcomes[check].worst;
  return outcomes[check].status == CheckOutcome::Status::Ok && outcomes[check].violated;
}

ComplexMatrix principal_submatrix(const ComplexMatrix& m, std::size_t k) {
  ComplexMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = m(i, j);
  return out;
}

ComplexMatrix toward_diagonal(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = i == j ? m(i, j) : 0.5 * m(i, j);
  return out;
}

ShrinkOutcome shrink_matrix(const TrialConfig& cfg, int check, MatrixTrialData trial,
                            bool run_scan, int mutate_index, double mutate_factor) {
  double worst = 0;
  matrix_check_violates(trial, cfg.tol_rel_matrix, run_scan, check, mutate_index,
                        mutate_factor, worst);
  int steps = 0;
  for (; steps < kShrinkStepCap; ++steps) {
    bool moved = false;
    std::size_t n = trial.triple.dim();
    // Candidate moves, tried in order.
    for (int mv = 0; mv < 5 && !moved; ++mv) {
      try {
        MatrixTrialData candidate = trial;
        switch (mv) {
          case 0: {
            if (n < 2) continue;
            std::size_t k = n - 1;
            candidate.triple =
                MatrixTriple(PsdMatrix(principal_submatrix(trial.triple.A.base(), k)),
                             PsdMatrix(principal_submatrix(trial.triple.B.base(), k)),
                             principal_submatrix(trial.triple.X, k));
            if (candidate.diagonal) {
              candidate.diag_a.resize(k);
              candidate.diag_b.resize(k);
              candidate.diag_x.resize(k);
            }
            break;
          }
          case 1:
            candidate.triple = MatrixTriple(PsdMatrix(toward_diagonal(trial.triple.A.base())),
                                            trial.triple.B, trial.triple.X);
            break;
          case 2:
            candidate.triple = MatrixTriple(trial.triple.A,
                                            PsdMatrix(toward_diagonal(trial.triple.B.base())),
                                            trial.triple.X);
            break;
          case 3:
            candidate.triple = MatrixTriple(trial.triple.A, trial.triple.B,
                                            toward_diagonal(trial.triple.X));
            break;
          case 4: {
            double nu = trial.w.nu();
            double anchor = nu < 0.25 ? 0.0 : (nu < 0.75 ? 0.5 : 1.0);
            double nu2 = 0.5 * (nu + anchor);
            if (nu2 == nu) continue;
            candidate.w = WeightSplit(nu2);
            break;
          }
        }
        // Skip no-op moves on already-diagonal matrices.
        if (mv >= 1 && mv <= 3 && trial.diagonal) continue;
        double cand_worst = 0;
        if (matrix_check_violates(candidate, cfg.tol_rel_matrix, run_scan, check,
                                  mutate_index, mutate_factor, cand_worst)) {
          trial = std::move(candidate);
          worst = cand_worst;
          moved = true;
        }
      } catch (const std::exception&) {
        continue;  // move failed; try the next one
      }
    }
    if (!moved) break;
  }
  return {serialize_matrix_inputs(trial), worst, steps};
}

void finalize_suite(const TrialConfig& cfg, Suite suite_kind, const CertifyOptions& opts,
                    const std::vector<CheckInfo>& infos, SuiteRun& run, int mutate_index,
                    CertifyResult& result) {
  bool scalar = suite_kind == Suite::Scalar;
  for (std::size_t c = 0; c < infos.size(); ++c) {
    CheckAccumulator& acc = run.accs[c];
    GapStatistics st;
    st.inequality_id = infos[c].id;
    st.paper_eq = infos[c].equation;
    st.log_domain = infos[c].log_domain;
    st.count = acc.count;
    st.equality_hits = acc.equality;
    st.evaluation_errors = acc.errors;
    st.violations = acc.violations;
    st.min_lower_slack = acc.count ? acc.min_lower : std::numeric_limits<double>::quiet_NaN();
    st.min_upper_slack = acc.count ? acc.min_upper : std::numeric_limits<double>::quiet_NaN();
    st.median_lower_slack = median_of(acc.lowers);
    st.median_upper_slack = median_of(acc.uppers);
    result.statistics.push_back(std::move(st));
    result.total_violations += acc.violations;

    std::sort(acc.violation_list.begin(), acc.violation_list.end());
    std::size_t keep = std::min(acc.violation_list.size(), opts.max_recorded_violations_per_check);
    if (keep < acc.violation_list.size()) result.violations_truncated = true;
    for (std::size_t v = 0; v < keep; ++v) {
      auto [index, worst] = acc.violation_list[v];
      ViolationRecord rec;
      rec.inequality_id = infos[c].id;
      rec.trial_index = index;
      rec.observed_slack = worst;
      if (scalar) {
        ScalarTrial trial = generate_scalar_trial(cfg, index);
        rec.inputs = serialize_scalar_inputs(trial);
        ShrinkOutcome shrunk = shrink_scalar(cfg, static_cast<int>(c), trial, mutate_index,
                                             opts.mutate_factor);
        rec.shrunk_inputs = shrunk.inputs;
        rec.shrunk_slack = shrunk.slack;
        rec.shrink_steps = shrunk.steps;
      } else {
        MatrixTrialData trial = generate_matrix_trial_data(cfg, index);
        rec.inputs = serialize_matrix_inputs(trial);
        ShrinkOutcome shrunk = shrink_matrix(cfg, static_cast<int>(c), trial,
                                             index % kScanStride == 0, mutate_index,
                                             opts.mutate_factor);
        rec.shrunk_inputs = shrunk.inputs;
        rec.shrunk_slack = shrunk.slack;
        rec.shrink_steps = shrunk.steps;
      }
      result.violations.push_back(std::move(rec));
    }
    acc.lowers.clear();
    acc.lowers.shrink_to_fit();
    acc.uppers.clear();
    acc.uppers.shrink_to_fit();
  }
  result.error_trials += run.error_trials;
  result.trials += cfg.trials;
}

void run_scalar_suite(const TrialConfig& cfg, const CertifyOptions& opts, int threads,
                      CertifyResult& result) {
  int mutate_index = opts.mutate_inequality.empty()
                         ? -1
                         : find_check_index(scalar_check_infos(), opts.mutate_inequality);
  SuiteRun run = run_lanes(
      cfg, static_cast<int>(scalar_check_infos().size()), threads,
      [&](std::uint64_t i, std::vector<CheckOutcome>& out, bool& trial_error) {
        try {
          ScalarTrial trial = generate_scalar_trial(cfg, i);
          evaluate_scalar_checks(trial, cfg.tol_rel_scalar, mutate_index, opts.mutate_factor,
                                 out);
        } catch (const std::exception&) {
          out.assign(scalar_check_infos().size(), CheckOutcome{});
          for (auto& o : out) o.status = CheckOutcome::Status::Error;
        }
        trial_error = false;
        for (const auto& o : out)
          if (o.status == CheckOutcome::Status::Error) trial_error = true;
      });
  finalize_suite(cfg, Suite::Scalar, opts, scalar_check_infos(), run, mutate_index, result);
}

void run_matrix_suite(const TrialConfig& cfg, const CertifyOptions& opts, int threads,
                      CertifyResult& result) {
  int mutate_index = opts.mutate_inequality.empty()
                         ? -1
                         : find_check_index(matrix_check_infos(), opts.mutate_inequality);
  SuiteRun run = run_lanes(
      cfg, static_cast<int>(matrix_check_infos().size()), threads,
      [&](std::uint64_t i, std::vector<CheckOutcome>& out, bool& trial_error) {
        try {
          MatrixTrialData trial = generate_matrix_trial_data(cfg, i);
          evaluate_matrix_checks(trial, cfg.tol_rel_matrix, i % kScanStride == 0,
                                 mutate_index, opts.mutate_factor, out);
        } catch (const std::exception&) {
          out.assign(matrix_check_infos().size(), CheckOutcome{});
          for (auto& o : out) o.status = CheckOutcome::Status::Error;
        }
        trial_error = false;
        for (const auto& o : out)
          if (o.status == CheckOutcome::Status::Error) trial_error = true;
      });
  finalize_suite(cfg, Suite::Matrix, opts, matrix_check_infos(), run, mutate_index, result);
}

}  // namespace

CertifyResult certify(const TrialConfig& cfg, Suite suite, const CertifyOptions& opts) {
  cfg.validate();
  if (!opts.mutate_inequality.empty()) {
    bool known = find_check_index(scalar_check_infos(), opts.mutate_inequality) >= 0 ||
                 find_check_index(matrix_check_infos(), opts.mutate_inequality) >= 0;
    if (!known)
      throw DomainError("unknown inequality id '" + opts.mutate_inequality + "'");
  }
  int threads = resolve_threads(opts);
  CertifyResult result;
  result.suite = suite == Suite::Scalar ? "scalar" : (suite == Suite::Matrix ? "matrix" : "all");
  if (suite == Suite::Scalar || suite == Suite::All)
    run_scalar_suite(cfg, opts, threads, result);
  if (suite == Suite::Matrix || suite == Suite::All)
    run_matrix_suite(cfg, opts, threads, result);
  result.aborted = result.error_trials > static_cast<std::uint64_t>(
                                             kErrorBudget * static_cast<double>(result.trials));
  return result;
}

ViolationRecord shrink(const TrialConfig& cfg, Suite suite, const CertifyOptions& opts,
                       const ViolationRecord& v) {
  cfg.validate();
  int scalar_index = find_check_index(scalar_check_infos(), v.inequality_id);
  int matrix_index = find_check_index(matrix_check_infos(), v.inequality_id);
  bool use_scalar;
  if (suite == Suite::Scalar) {
    use_scalar = true;
  } else if (suite == Suite::Matrix) {
    use_scalar = false;
  } else {
    use_scalar = scalar_index >= 0;
  }
  int check = use_scalar ? scalar_index : matrix_index;
  if (check < 0)
    throw DomainError("unknown inequality id '" + v.inequality_id + "'");
  int mutate_index = -1;
  if (!opts.mutate_inequality.empty()) {
    mutate_index = use_scalar ? find_check_index(scalar_check_infos(), opts.mutate_inequality)
                              : find_check_index(matrix_check_infos(), opts.mutate_inequality);
  }
  ViolationRecord out = v;
  if (use_scalar) {
    ScalarTrial trial = generate_scalar_trial(cfg, v.trial_index);
    double worst = 0;
    if (!scalar_check_violates(trial, cfg.tol_rel_scalar, check, mutate_index,
                               opts.mutate_factor, worst))
      throw DomainError("record does not violate " + v.inequality_id +
                        " under this configuration");
    out.inputs = serialize_scalar_inputs(trial);
    out.observed_slack = worst;
    ShrinkOutcome shrunk =
        shrink_scalar(cfg, check, trial, mutate_index, opts.mutate_factor);
    out.shrunk_inputs = shrunk.inputs;
    out.shrunk_slack = shrunk.slack;
    out.shrink_steps = shrunk.steps;
  } else {
    MatrixTrialData trial = generate_matrix_trial_data(cfg, v.trial_index);
    bool run_scan = v.trial_index % kScanStride == 0;
    double worst = 0;
    if (!matrix_check_violates(trial, cfg.tol_rel_matrix, run_scan, check, mutate_index,
                               opts.mutate_factor, worst))
      throw DomainError("record does not violate " + v.inequality_id +
                        " under this configuration");
    out.inputs = serialize_matrix_inputs(trial);
    out.observed_slack = worst;
    ShrinkOutcome shrunk =
        shrink_matrix(cfg, check, trial, run_scan, mutate_index, opts.mutate_factor);
    out.shrunk_inputs = shrunk.inputs;
    out.shrunk_slack = shrunk.slack;
    out.shrink_steps = shrunk.steps;
  }
  return out;
}

}  // namespace heinzlab

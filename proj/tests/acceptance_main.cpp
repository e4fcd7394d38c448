// Acceptance suite: runs every top-level requirement at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code 0 only if all pass.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "heinzlab/certifier.hpp"
#include "heinzlab/convex_gate.hpp"
#include "heinzlab/matrix_inequalities.hpp"
#include "heinzlab/norms.hpp"
#include "heinzlab/psd_matrix.hpp"
#include "heinzlab/scalar_kernel.hpp"
#include "heinzlab/trial_rng.hpp"
#include "support.hpp"

using namespace heinzlab;
using C = std::complex<double>;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TrialConfig scalar_config() {
  TrialConfig cfg;
  cfg.seed = 42;
  cfg.trials = 1000000;
  cfg.nu_strategy = NuStrategy::BoundaryWeighted;
  return cfg;
}

TrialConfig matrix_config() {
  TrialConfig cfg;
  cfg.seed = 7;
  cfg.trials = 10000;
  cfg.dim_max = 6;
  return cfg;
}

// criterion 1: the million-trial scalar suite reports zero violations.
void criterion_scalar_suite() {
  auto t0 = std::chrono::steady_clock::now();
  CertifyResult result = certify(scalar_config(), Suite::Scalar);
  double elapsed = seconds_since(t0);
  bool pass = result.total_violations == 0 && !result.aborted && result.error_trials == 0;
  report(1, pass,
         summary_line(result) + " (seed 42, 1e6 trials, tol 1e-12, " +
             std::to_string(elapsed) + "s)");
}

// criterion 2: chain ordering on every trial of the same stream, with the
// t1 = t2 degeneracy exactly at m = 1, 2.
void criterion_chain_degeneracy() {
  TrialConfig cfg = scalar_config();
  std::uint64_t bad_order = 0, bad_equality = 0, equal_m12 = 0, distinct_m3 = 0;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    ScalarTrial t = generate_scalar_trial(cfg, i);
    if (t.pair.a() == t.pair.b()) continue;
    RefinementChain c = theorem22_chain(t.pair, t.w, t.m);
    double scale = std::max({std::abs(c.t1), std::abs(c.t2), std::abs(c.t3), std::abs(c.t4), 1.0});
    if (!(c.t1 <= c.t2 + 1e-12 * scale && c.t2 <= c.t3 + 1e-12 * scale &&
          c.t3 <= c.t4 + 1e-12 * scale))
      ++bad_order;
    bool equal = std::abs(c.t1 - c.t2) <= 1e-12 * std::max(std::abs(c.t1), std::abs(c.t2));
    if (t.m.m() <= 2) {
      if (!equal) ++bad_equality;
      ++equal_m12;
    } else {
      if (equal && t.w.r0() > 0.0) ++bad_equality;
      ++distinct_m3;
    }
  }
  bool pass = bad_order == 0 && bad_equality == 0 && equal_m12 > 0 && distinct_m3 > 0;
  report(2, pass,
         "chain ordered on all trials, t1 = t2 exactly for m in {1,2} (" +
             std::to_string(equal_m12) + " degenerate, " + std::to_string(distinct_m3) +
             " strict trials); " + std::to_string(bad_order) + " order / " +
             std::to_string(bad_equality) + " degeneracy failures");
}

// criterion 3: specialization identities within 4 ulps on 1e5 trials.
void criterion_specializations() {
  TrialConfig cfg = scalar_config();
  cfg.trials = 100000;
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    ScalarTrial t = generate_scalar_trial(cfg, i);
    SandwichResult young = young_sandwich(t.pair, t.w);
    SandwichResult p1 = power_p_sandwich(t.pair, t.w, ExponentP(1.0));
    SandwichResult squared = squared_young_sandwich(t.pair, t.w);
    SandwichResult p2 = power_p_sandwich(t.pair, t.w, ExponentP(2.0));
    ConvexFunctionSpec phi = ConvexFunctionSpec::power(t.p.p());
    SandwichResult via_phi = phi_young_sandwich(phi, t.pair, t.w);
    SandwichResult direct = power_p_sandwich(t.pair, t.w, t.p);
    auto ok = [](const SandwichResult& x, const SandwichResult& y) {
      return testsupport::within_ulps(x.lower, y.lower, 4) &&
             testsupport::within_ulps(x.middle, y.middle, 4) &&
             testsupport::within_ulps(x.upper, y.upper, 4);
    };
    if (!ok(young, p1) || !ok(squared, p2) || !ok(via_phi, direct)) ++failures;
  }
  report(3, failures == 0,
         "power_p at p=1/p=2 and phi-power sandwiches match within 4 ulps on 1e5 trials (" +
             std::to_string(failures) + " failures)");
}

// criterion 4: the matrix suite reports zero violations.
CertifyResult criterion_matrix_suite() {
  auto t0 = std::chrono::steady_clock::now();
  CertifyResult result = certify(matrix_config(), Suite::Matrix);
  double elapsed = seconds_since(t0);
  bool pass = result.total_violations == 0 && !result.aborted && result.error_trials == 0;
  report(4, pass,
         summary_line(result) + " (seed 7, 1e4 trials, dim <= 6, tol 1e-9, " +
             std::to_string(elapsed) + "s)");
  return result;
}

// criterion 5: the diagonal sub-stream agrees with the scalar aggregation.
void criterion_diagonal_oracle(const CertifyResult& matrix_result) {
  const GapStatistics* diag = nullptr;
  for (const auto& st : matrix_result.statistics)
    if (st.inequality_id == "diag-oracle") diag = &st;
  bool pass = diag != nullptr && diag->violations == 0 && diag->count >= 1800 &&
              diag->count <= 2200;
  report(5, pass,
         diag ? ("diagonal oracle: " + std::to_string(diag->count) + " triples, " +
                 std::to_string(diag->violations) + " disagreements beyond 8 ulps")
              : "diag-oracle statistics missing");
}

// criterion 6: eigensolver quality on 1e4 random Hermitian matrices.
void criterion_eigensolver() {
  std::uint64_t bad = 0;
  double worst_recon = 0, worst_unit = 0, worst_semi = 0;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    TrialRng rng(20250806, trial);
    std::size_t n = 1 + static_cast<std::size_t>(rng.u01(0) * 8.0);
    ComplexMatrix h(n, n);
    std::uint64_t k = 10;
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
    EigenDecomposition eig = hermitian_eigendecomposition(h);
    const ComplexMatrix& q = eig.eigenvectors;
    ComplexMatrix scaled = q;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) scaled(i, j) = q(i, j) * eig.eigenvalues[j];
    double hnorm = std::max(hilbert_schmidt_norm(h), 1e-300);
    double recon = hilbert_schmidt_norm(subtract(h, matmul(scaled, adjoint(q)))) / hnorm;
    double unit = hilbert_schmidt_norm(
                      subtract(matmul(adjoint(q), q), ComplexMatrix::identity(n))) /
                  std::sqrt(static_cast<double>(n));
    // semigroup on a PSD sample derived from the same stream
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double re, im;
        rng.gaussian_pair(k, re, im);
        k += 2;
        g(i, j) = {re, im};
      }
    ComplexMatrix base = matmul(adjoint(g), g);
    for (std::size_t i = 0; i < n; ++i) base(i, i) += 1e-8;
    PsdMatrix psd(base);
    ComplexMatrix root = psd.fractional_power(0.5);
    double semi = hilbert_schmidt_norm(subtract(matmul(root, root), psd.base())) /
                  hilbert_schmidt_norm(psd.base());
    worst_recon = std::max(worst_recon, recon);
    worst_unit = std::max(worst_unit, unit);
    worst_semi = std::max(worst_semi, semi);
    if (recon > 1e-12 || unit > 1e-12 || semi > 1e-10) ++bad;
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "1e4 Hermitian matrices n <= 8: worst reconstruction %.2e, unitarity %.2e, "
                "sqrt semigroup %.2e",
                worst_recon, worst_unit, worst_semi);
  report(6, bad == 0, detail);
}

// criterion 7: convexity scan on 1e3 random triples, grid 33.
void criterion_convexity_scan() {
  TrialConfig cfg = matrix_config();
  std::uint64_t bad = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    MatrixTrialData t = generate_matrix_trial_data(cfg, i);
    ConvexityScan scan = heinz_convexity_scan(t.triple, NormSelector::schatten(1.0), 33);
    if (!(scan.convex_ok && scan.symmetric_ok && scan.argmin_ok)) ++bad;
  }
  report(7, bad == 0,
         "heinz convexity scan (grid 33) convex, symmetric, argmin at nu = 1/2 on 1e3 "
         "triples (" +
             std::to_string(bad) + " failures)");
}

// criterion 8: the mutation hook is caught, shrunk, and reports stay
// byte-identical across repeated runs.
void criterion_mutation_hook() {
  TrialConfig cfg = scalar_config();
  cfg.trials = 20000;
  CertifyOptions opts;
  opts.mutate_inequality = "eq4";
  CertifyResult first = certify(cfg, Suite::Scalar, opts);
  CertifyResult second = certify(cfg, Suite::Scalar, opts);
  bool caught = first.total_violations >= 1 && !first.violations.empty();
  bool shrunk = caught && !first.violations.front().shrunk_inputs.empty() &&
                first.violations.front().shrunk_slack < 0.0;
  bool deterministic = render_report(cfg, opts, first) == render_report(cfg, opts, second);

  TrialConfig mcfg = matrix_config();
  mcfg.trials = 2000;
  CertifyOptions mopts;
  mopts.mutate_inequality = "eq24:tr";
  CertifyResult matrix_mut = certify(mcfg, Suite::Matrix, mopts);
  bool matrix_caught = matrix_mut.total_violations >= 1;

  report(8, caught && shrunk && deterministic && matrix_caught,
         "1% bound perturbation caught (" + std::to_string(first.total_violations) +
             " scalar, " + std::to_string(matrix_mut.total_violations) +
             " matrix violations), shrunk records present, reports byte-identical");
}

// criterion 9: every hand-derived example value matches the high-precision
// oracle data to 1e-12 relative.
std::map<std::string, double> library_values() {
  std::map<std::string, double> v;
  PositivePair p91(9, 1), p41(4, 1);
  WeightSplit w25(0.25);

  v["weighted_arithmetic:9,1,0.25"] = weighted_arithmetic(p91, w25);
  v["weighted_geometric:9,1,0.25"] = weighted_geometric(p91, w25);
  v["heinz_mean:9,1,0.25"] = heinz_mean(p91, w25);
  auto put_sandwich = [&](const std::string& name, const SandwichResult& s) {
    v[name + ".lower"] = s.lower;
    v[name + ".middle"] = s.middle;
    v[name + ".upper"] = s.upper;
  };
  put_sandwich("young_sandwich:9,1,0.25", young_sandwich(p91, w25));
  put_sandwich("squared_young_sandwich:9,1,0.25", squared_young_sandwich(p91, w25));
  v["power_m_refinement:4,1,0.25,3"] = power_m_refinement_term(p41, w25, PowerIndex(3));
  v["power_m_refinement:9,1,0.25,1"] = power_m_refinement_term(p91, w25, PowerIndex(1));
  put_sandwich("power_p_sandwich:9,1,0.25,2", power_p_sandwich(p91, w25, ExponentP(2)));
  put_sandwich("power_p_sandwich:4,1,0.25,3", power_p_sandwich(p41, w25, ExponentP(3)));
  RefinementChain c3 = theorem22_chain(p41, w25, PowerIndex(3));
  v["theorem22_chain:4,1,0.25,3.t1"] = c3.t1;
  v["theorem22_chain:4,1,0.25,3.t2"] = c3.t2;
  v["theorem22_chain:4,1,0.25,3.t3"] = c3.t3;
  v["theorem22_chain:4,1,0.25,3.t4"] = c3.t4;
  RefinementChain c1 = theorem22_chain(p41, w25, PowerIndex(1));
  v["theorem22_chain:4,1,0.25,1.t1"] = c1.t1;
  v["theorem22_chain:4,1,0.25,1.t2"] = c1.t2;
  put_sandwich("heinz_sandwich:9,1,0.25", heinz_sandwich(p91, w25));
  put_sandwich("heinz_power_sandwich:9,1,0.25,1", heinz_power_sandwich(p91, w25, ExponentP(1)));

  auto pow1 = ConvexFunctionSpec::power(1.0);
  auto pow2 = ConvexFunctionSpec::power(2.0);
  auto pow3 = ConvexFunctionSpec::power(3.0);
  auto qs2 = slope_chain(pow2, 0, 1, 2, 3);
  auto qse = slope_chain(ConvexFunctionSpec::exponential(), 0, 1, 2, 3);
  for (int i = 0; i < 4; ++i) {
    v["slope_chain:pow2,0,1,2,3.q" + std::to_string(i)] = qs2[i];
    v["slope_chain:exp,0,1,2,3.q" + std::to_string(i)] = qse[i];
  }
  auto dd2 = difference_dominance(pow2, PointQuadruple(3, 1, 2, 1));
  v["difference_dominance:pow2,x3,y1,z2,w1.first"] = dd2[0];
  v["difference_dominance:pow2,x3,y1,z2,w1.second"] = dd2[1];
  auto dd3 = difference_dominance(pow3, PointQuadruple(2, 0, 1, 0));
  v["difference_dominance:pow3,x2,y0,z1,w0.first"] = dd3[0];
  v["difference_dominance:pow3,x2,y0,z1,w0.second"] = dd3[1];
  put_sandwich("phi_young_sandwich:pow1,9,1,0.25", phi_young_sandwich(pow1, p91, w25));
  put_sandwich("phi_young_sandwich:pow2,9,1,0.25", phi_young_sandwich(pow2, p91, w25));
  put_sandwich("phi_heinz_sandwich:pow1,9,1,0.25,full",
               phi_heinz_sandwich(pow1, p91, w25, HeinzVariant::Full));

  ComplexMatrix sym22(2, 2, {C(2, 0), C(1, 0), C(1, 0), C(2, 0)});
  auto esym = hermitian_eigendecomposition(sym22);
  v["eigen:sym22.l0"] = esym.eigenvalues[0];
  v["eigen:sym22.l1"] = esym.eigenvalues[1];
  ComplexMatrix pauli(2, 2, {C(0, 0), C(0, -1), C(0, 1), C(0, 0)});
  auto epy = hermitian_eigendecomposition(pauli);
  v["eigen:pauli.l0"] = epy.eigenvalues[0];
  v["eigen:pauli.l1"] = epy.eigenvalues[1];
  double d49[2] = {4, 9};
  PsdMatrix psd49(ComplexMatrix::diagonal(std::span<const double>(d49)));
  ComplexMatrix half49 = psd49.fractional_power(0.5);
  v["fracpow:diag49,0.5.d0"] = half49(0, 0).real();
  v["fracpow:diag49,0.5.d1"] = half49(1, 1).real();
  PsdMatrix psds(sym22);
  ComplexMatrix halfs = psds.fractional_power(0.5);
  v["fracpow:sym22,0.5.on"] = halfs(0, 0).real();
  v["fracpow:sym22,0.5.off"] = halfs(0, 1).real();
  SingularValues nil = singular_values(ComplexMatrix(2, 2, {C(0, 0), C(1, 0), C(0, 0), C(0, 0)}));
  v["singular:nilpotent.s0"] = nil[0];
  v["singular:nilpotent.s1"] = nil[1];
  C d3m4[2] = {C(3, 0), C(-4, 0)};
  SingularValues s34 = singular_values(ComplexMatrix::diagonal(std::span<const C>(d3m4, 2)));
  v["singular:diag3m4.s0"] = s34[0];
  v["singular:diag3m4.s1"] = s34[1];
  double d34[2] = {3, 4};
  ComplexMatrix diag34 = ComplexMatrix::diagonal(std::span<const double>(d34));
  v["schatten:diag34,2"] = schatten_norm(diag34, 2.0);
  v["schatten:diag34,1"] = schatten_norm(diag34, 1.0);
  v["hs_norm:ones22"] =
      hilbert_schmidt_norm(ComplexMatrix(2, 2, {C(1, 0), C(1, 0), C(1, 0), C(1, 0)}));
  v["hs_norm:pauli"] = hilbert_schmidt_norm(pauli);
  v["spectral:diag34"] = spectral_norm(diag34);
  v["spectral:nilpotent"] = spectral_norm(ComplexMatrix(2, 2, {C(0, 0), C(1, 0), C(0, 0), C(0, 0)}));

  double da[2] = {4, 1}, db[2] = {1, 4};
  MatrixTriple diagex(PsdMatrix(ComplexMatrix::diagonal(std::span<const double>(da))),
                      PsdMatrix(ComplexMatrix::diagonal(std::span<const double>(db))),
                      ComplexMatrix::identity(2));
  TripleWorkspace ws = make_triple_workspace(diagex, w25);
  v["hs_identity_lhs:diagex"] = ws.hs2_diff;
  put_sandwich("hs_young_sandwich:diagex,0.25", hs_young_sandwich(diagex, w25));
  put_sandwich("hs_young_sandwich:diagex,0.5", hs_young_sandwich(diagex, WeightSplit(0.5)));
  auto pow15 = ConvexFunctionSpec::power(1.5);
  put_sandwich("phi_hs_sandwich:diagex,0.25,pow1.5,theorem",
               phi_hs_sandwich(diagex, w25, pow15, HsSandwichForm::Theorem));
  put_sandwich("phi_hs_sandwich:diagex,0.25,pow1.5,display",
               phi_hs_sandwich(diagex, w25, pow15, HsSandwichForm::PowerDisplay));
  NormSelector trace = NormSelector::schatten(1.0);
  auto bounds = heinz_norm_bounds(diagex, w25, trace);
  v["heinz_norm_bounds:diagex,0.25,trace.b0"] = bounds[0];
  v["heinz_norm_bounds:diagex,0.25,trace.b1"] = bounds[1];
  v["heinz_norm_bounds:diagex,0.25,trace.b2"] = bounds[2];
  put_sandwich("heinz_norm_sandwich:diagex,0.25,trace", heinz_norm_sandwich(diagex, w25, trace));
  put_sandwich("phi_heinz_norm_sandwich:diagex,0.25,trace,pow2",
               phi_heinz_norm_sandwich(diagex, w25, trace, pow2));
  ConvexityScan scan = heinz_convexity_scan(diagex, trace, 5);
  for (int i = 0; i < 5; ++i)
    v["heinz_scan:diagex,trace,5.f" + std::to_string(i)] = scan.samples[i].second;
  return v;
}

void criterion_derived_values() {
  auto oracle = nlohmann::json::parse(testsupport::read_data_file("derived_values.json"));
  std::map<std::string, double> lib = library_values();
  std::uint64_t checked = 0, failures = 0;
  std::string first_failure;
  for (auto it = oracle.begin(); it != oracle.end(); ++it) {
    auto found = lib.find(it.key());
    if (found == lib.end()) {
      ++failures;
      if (first_failure.empty()) first_failure = it.key() + " (no library evaluation)";
      continue;
    }
    double want = std::stod(it.value().get<std::string>());
    double got = found->second;
    bool ok = want == 0.0 ? std::abs(got) <= 1e-12
                          : std::abs(got - want) <= 1e-12 * std::abs(want);
    if (!ok) {
      ++failures;
      if (first_failure.empty())
        first_failure = it.key() + " got " + std::to_string(got) + " want " +
                        it.value().get<std::string>().substr(0, 25);
    }
    ++checked;
  }
  report(9, failures == 0,
         std::to_string(checked) + " derived values vs the 60-digit oracle at 1e-12 relative" +
             (failures ? "; first failure: " + first_failure : ""));
}

}  // namespace

int main() {
  criterion_scalar_suite();
  criterion_chain_degeneracy();
  criterion_specializations();
  CertifyResult matrix_result = criterion_matrix_suite();
  criterion_diagonal_oracle(matrix_result);
  criterion_eigensolver();
  criterion_convexity_scan();
  criterion_mutation_hook();
  criterion_derived_values();
  std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}

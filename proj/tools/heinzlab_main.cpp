// heinzlab command-line interface: evaluate mean/sandwich quantities, run
// randomized certification suites, sweep parameter grids, and render reports.
//
// Exit codes: 0 success, 2 usage, 3 domain precondition, 4 I/O failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heinzlab/certifier.hpp"
#include "heinzlab/convex_gate.hpp"
#include "heinzlab/errors.hpp"
#include "heinzlab/matrix_inequalities.hpp"
#include "heinzlab/matrix_io.hpp"
#include "heinzlab/norms.hpp"
#include "heinzlab/scalar_kernel.hpp"

namespace {

using namespace heinzlab;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string fmt_list(std::initializer_list<double> values) {
  std::string out;
  bool first = true;
  for (double v : values) {
    if (!first) out += ", ";
    out += fmt(v);
    first = false;
  }
  return out;
}

std::string fmt_sandwich(const SandwichResult& s) {
  return fmt_list({s.lower, s.middle, s.upper});
}

struct EvalFlags {
  std::string op;
  std::optional<double> a, b, nu, p;
  std::optional<int> m;
  std::string phi;
  std::string variant = "full";
  std::string form = "theorem";
  std::string norm = "trace";
  std::string matrix_file;
  std::optional<double> wq, zq, yq, xq;  // quadruple points
};

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw DomainError(std::string("missing required flag --") + flag);
  return *v;
}

PositivePair pair_of(const EvalFlags& f) {
  return PositivePair(require(f.a, "a"), require(f.b, "b"));
}

WeightSplit weight_of(const EvalFlags& f) { return WeightSplit(require(f.nu, "nu")); }

ConvexFunctionSpec phi_of(const EvalFlags& f) {
  if (f.phi.empty()) throw DomainError("missing required flag --phi");
  return ConvexFunctionSpec::from_key(f.phi);
}

ComplexMatrix single_matrix_of(const EvalFlags& f) {
  if (f.matrix_file.empty()) throw DomainError("missing required flag --matrix-file");
  std::string text = read_file(f.matrix_file);
  if (is_triple_document(text))
    throw DomainError("this operation expects a single-matrix document");
  return parse_matrix(text);
}

MatrixTriple triple_of(const EvalFlags& f) {
  if (f.matrix_file.empty()) throw DomainError("missing required flag --matrix-file");
  TripleDocument doc = parse_triple(read_file(f.matrix_file));
  return MatrixTriple(PsdMatrix(doc.a), PsdMatrix(doc.b), doc.x);
}

const char* kEvalOps =
    "weighted-arithmetic weighted-geometric heinz-mean young-sandwich "
    "squared-young-sandwich power-m-refinement power-p-sandwich theorem22-chain "
    "heinz-sandwich heinz-power-sandwich slope-chain difference-dominance "
    "phi-young-sandwich phi-heinz-sandwich schatten hilbert-schmidt spectral "
    "singular-values fractional-power hs-identity-residual hs-young-sandwich "
    "phi-hs-sandwich heinz-norm-bounds heinz-norm-sandwich phi-heinz-norm-sandwich";

int run_eval(const EvalFlags& f) {
  const std::string& op = f.op;
  if (op == "weighted-arithmetic") {
    std::cout << fmt(weighted_arithmetic(pair_of(f), weight_of(f))) << "\n";
  } else if (op == "weighted-geometric") {
    std::cout << fmt(weighted_geometric(pair_of(f), weight_of(f))) << "\n";
  } else if (op == "heinz-mean") {
    std::cout << fmt(heinz_mean(pair_of(f), weight_of(f))) << "\n";
  } else if (op == "young-sandwich") {
    std::cout << fmt_sandwich(young_sandwich(pair_of(f), weight_of(f))) << "\n";
  } else if (op == "squared-young-sandwich") {
    std::cout << fmt_sandwich(squared_young_sandwich(pair_of(f), weight_of(f))) << "\n";
  } else if (op == "power-m-refinement") {
    if (!f.m) throw DomainError("missing required flag --m");
    std::cout << fmt(power_m_refinement_term(pair_of(f), weight_of(f), PowerIndex(*f.m)))
              << "\n";
  } else if (op == "power-p-sandwich") {
    std::cout << fmt_sandwich(
                     power_p_sandwich(pair_of(f), weight_of(f), ExponentP(require(f.p, "p"))))
              << "\n";
  } else if (op == "theorem22-chain") {
    if (!f.m) throw DomainError("missing required flag --m");
    RefinementChain c = theorem22_chain(pair_of(f), weight_of(f), PowerIndex(*f.m));
    std::cout << fmt_list({c.t1, c.t2, c.t3, c.t4}) << "\n";
  } else if (op == "heinz-sandwich") {
    std::cout << fmt_sandwich(heinz_sandwich(pair_of(f), weight_of(f))) << "\n";
  } else if (op == "heinz-power-sandwich") {
    std::cout << fmt_sandwich(heinz_power_sandwich(pair_of(f), weight_of(f),
                                                   ExponentP(require(f.p, "p"))))
              << "\n";
  } else if (op == "slope-chain") {
    auto q = slope_chain(phi_of(f), require(f.wq, "w"), require(f.zq, "z"),
                         require(f.yq, "y"), require(f.xq, "x"));
    std::cout << fmt_list({q[0], q[1], q[2], q[3]}) << "\n";
  } else if (op == "difference-dominance") {
    PointQuadruple quad(require(f.xq, "x"), require(f.yq, "y"), require(f.zq, "z"),
                        require(f.wq, "w"));
    auto d = difference_dominance(phi_of(f), quad);
    std::cout << fmt_list({d[0], d[1]}) << "\n";
  } else if (op == "phi-young-sandwich") {
    std::cout << fmt_sandwich(phi_young_sandwich(phi_of(f), pair_of(f), weight_of(f)))
              << "\n";
  } else if (op == "phi-heinz-sandwich") {
    HeinzVariant variant;
    if (f.variant == "full") {
      variant = HeinzVariant::Full;
    } else if (f.variant == "halved") {
      variant = HeinzVariant::Halved;
    } else {
      throw DomainError("--variant must be full or halved");
    }
    std::cout << fmt_sandwich(
                     phi_heinz_sandwich(phi_of(f), pair_of(f), weight_of(f), variant))
              << "\n";
  } else if (op == "schatten") {
    double p = require(f.p, "p");
    if (!(std::isfinite(p) && p >= 1.0))
      throw DomainError("Schatten norm requires p >= 1, got p = " + std::to_string(p));
    std::cout << fmt(schatten_norm(single_matrix_of(f), p)) << "\n";
  } else if (op == "hilbert-schmidt") {
    std::cout << fmt(hilbert_schmidt_norm(single_matrix_of(f))) << "\n";
  } else if (op == "spectral") {
    std::cout << fmt(spectral_norm(single_matrix_of(f))) << "\n";
  } else if (op == "singular-values") {
    SingularValues sv = singular_values(single_matrix_of(f));
    std::string out;
    for (std::size_t i = 0; i < sv.size(); ++i) {
      if (i) out += ", ";
      out += fmt(sv[i]);
    }
    std::cout << out << "\n";
  } else if (op == "fractional-power") {
    PsdMatrix a(single_matrix_of(f));
    std::cout << serialize_matrix(a.fractional_power(require(f.nu, "nu"))) << "\n";
  } else if (op == "hs-identity-residual") {
    std::cout << fmt(hs_identity_residual(triple_of(f))) << "\n";
  } else if (op == "hs-young-sandwich") {
    std::cout << fmt_sandwich(hs_young_sandwich(triple_of(f), weight_of(f))) << "\n";
  } else if (op == "phi-hs-sandwich") {
    HsSandwichForm form;
    if (f.form == "theorem") {
      form = HsSandwichForm::Theorem;
    } else if (f.form == "display") {
      form = HsSandwichForm::PowerDisplay;
    } else {
      throw DomainError("--form must be theorem or display");
    }
    std::cout << fmt_sandwich(phi_hs_sandwich(triple_of(f), weight_of(f), phi_of(f), form))
              << "\n";
  } else if (op == "heinz-norm-bounds") {
    auto b = heinz_norm_bounds(triple_of(f), weight_of(f), NormSelector::from_key(f.norm));
    std::cout << fmt_list({b[0], b[1], b[2]}) << "\n";
  } else if (op == "heinz-norm-sandwich") {
    std::cout << fmt_sandwich(heinz_norm_sandwich(triple_of(f), weight_of(f),
                                                  NormSelector::from_key(f.norm)))
              << "\n";
  } else if (op == "phi-heinz-norm-sandwich") {
    std::cout << fmt_sandwich(phi_heinz_norm_sandwich(
                     triple_of(f), weight_of(f), NormSelector::from_key(f.norm), phi_of(f)))
              << "\n";
  } else {
    std::cerr << "unknown operation '" << op << "'\nknown operations: " << kEvalOps << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// verify
// --------------------------------------------------------------------------

struct VerifyFlags {
  std::string suite;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  int dim_max = 6;
  std::string scalar_range = "-3:3";
  std::string nu_strategy = "boundary";
  double tol_scalar = 1e-12;
  double tol_matrix = 1e-9;
  std::string out;
  int threads = 0;
  std::string mutate_ineq;
  double mutate_factor = 1.01;
};

std::vector<double> parse_colon_list(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t colon = text.find(':', start);
    std::string piece =
        colon == std::string::npos ? text.substr(start) : text.substr(start, colon - start);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw DomainError("cannot parse numeric list '" + text + "'");
    }
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  return parts;
}

int run_verify(const VerifyFlags& f) {
  TrialConfig cfg;
  cfg.seed = f.seed;
  cfg.trials = f.trials;
  cfg.dim_max = f.dim_max;
  std::vector<double> range = parse_colon_list(f.scalar_range);
  if (range.size() != 2) throw DomainError("--scalar-range must look like lo:hi (log10)");
  cfg.log10_min = range[0];
  cfg.log10_max = range[1];
  if (f.nu_strategy == "uniform") {
    cfg.nu_strategy = NuStrategy::Uniform;
  } else if (f.nu_strategy == "boundary" || f.nu_strategy == "boundary-weighted") {
    cfg.nu_strategy = NuStrategy::BoundaryWeighted;
  } else {
    throw DomainError("--nu-strategy must be uniform or boundary");
  }
  cfg.tol_rel_scalar = f.tol_scalar;
  cfg.tol_rel_matrix = f.tol_matrix;

  Suite suite;
  if (f.suite == "scalar") {
    suite = Suite::Scalar;
  } else if (f.suite == "matrix") {
    suite = Suite::Matrix;
  } else if (f.suite == "all") {
    suite = Suite::All;
  } else {
    throw DomainError("--suite must be scalar, matrix, or all");
  }

  CertifyOptions opts;
  opts.mutate_inequality = f.mutate_ineq;
  opts.mutate_factor = f.mutate_factor;
  opts.threads = f.threads;

  CertifyResult result = certify(cfg, suite, opts);
  if (!f.out.empty()) write_file(f.out, render_report(cfg, opts, result));
  std::cout << summary_line(result) << "\n";
  return result.total_violations == 0 && !result.aborted ? kExitOk : kExitFailure;
}

// --------------------------------------------------------------------------
// sweep
// --------------------------------------------------------------------------

struct SweepFlags {
  std::string ineq;
  std::optional<double> a, b;
  std::string nu = "";
  std::string m = "";
  std::string p = "";
  std::string matrix_file;
  int grid = 0;
  std::string norm = "trace";
  std::string out;
};

std::vector<double> expand_range(const std::string& text, const char* flag) {
  if (text.empty()) throw DomainError(std::string("missing required flag --") + flag);
  std::vector<double> parts = parse_colon_list(text);
  if (parts.size() == 1) return parts;
  double lo = parts[0];
  double hi = parts.size() >= 2 ? parts[1] : parts[0];
  double step = parts.size() >= 3 ? parts[2] : 1.0;
  if (!(step > 0)) throw DomainError("range step must be positive");
  std::vector<double> values;
  for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi)); v += step)
    values.push_back(v);
  if (values.empty()) throw DomainError("empty parameter grid");
  return values;
}

int run_sweep(const SweepFlags& f) {
  std::string csv;
  if (f.ineq == "heinz-scan") {
    if (f.matrix_file.empty()) throw DomainError("missing required flag --matrix-file");
    if (f.grid < 3) throw DomainError("--grid must be >= 3");
    TripleDocument doc = parse_triple(read_file(f.matrix_file));
    MatrixTriple triple(PsdMatrix(doc.a), PsdMatrix(doc.b), doc.x);
    ConvexityScan scan =
        heinz_convexity_scan(triple, NormSelector::from_key(f.norm), f.grid);
    csv += "nu,f\n";
    for (const auto& [nu, value] : scan.samples)
      csv += fmt(nu) + "," + fmt(value) + "\n";
  } else if (f.ineq == "eq16") {
    PositivePair pair(require(f.a, "a"), require(f.b, "b"));
    std::vector<double> nus = expand_range(f.nu, "nu");
    std::vector<double> ms = expand_range(f.m, "m");
    csv += "m,nu,t1,t2,t3,t4\n";
    for (double nu : nus)
      for (double m : ms) {
        RefinementChain c =
            theorem22_chain(pair, WeightSplit(nu), PowerIndex(static_cast<int>(m)));
        csv += fmt(m) + "," + fmt(nu) + "," + fmt(c.t1) + "," + fmt(c.t2) + "," + fmt(c.t3) +
               "," + fmt(c.t4) + "\n";
      }
  } else {
    PositivePair pair(require(f.a, "a"), require(f.b, "b"));
    auto sandwich_for = [&](double nu, double p) -> SandwichResult {
      WeightSplit w(nu);
      if (f.ineq == "eq4") return young_sandwich(pair, w);
      if (f.ineq == "eq7") return squared_young_sandwich(pair, w);
      if (f.ineq == "eq10" || f.ineq == "eq9") return heinz_sandwich(pair, w);
      if (f.ineq == "eq15") return power_p_sandwich(pair, w, ExponentP(p));
      if (f.ineq == "eq18") return heinz_power_sandwich(pair, w, ExponentP(p));
      throw DomainError("unknown sweep inequality '" + f.ineq +
                        "' (known: eq4 eq7 eq9 eq10 eq15 eq16 eq18 heinz-scan)");
    };
    bool needs_p = f.ineq == "eq15" || f.ineq == "eq18";
    std::vector<double> nus = expand_range(f.nu, "nu");
    std::vector<double> ps = needs_p ? expand_range(f.p, "p") : std::vector<double>{1.0};
    csv += needs_p ? "p,nu,lower,middle,upper,lower_slack,upper_slack\n"
                   : "nu,lower,middle,upper,lower_slack,upper_slack\n";
    for (double p : ps)
      for (double nu : nus) {
        SandwichResult s = sandwich_for(nu, p);
        std::string prefix = needs_p ? fmt(p) + "," + fmt(nu) : fmt(nu);
        csv += prefix + "," + fmt(s.lower) + "," + fmt(s.middle) + "," + fmt(s.upper) + "," +
               fmt(s.lower_slack()) + "," + fmt(s.upper_slack()) + "\n";
      }
  }
  if (f.out.empty()) {
    std::cout << csv;
  } else {
    write_file(f.out, csv);
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// report
// --------------------------------------------------------------------------

int run_report(const std::string& in) {
  std::string text = read_file(in);
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.contains("schema"))
    throw IoError("'" + in + "' is not a heinzlab report document");
  if (doc["schema"] != "heinzlab-report/1")
    throw IoError("unsupported report schema " + doc["schema"].dump());
  std::cout << "suite: " << doc["suite"].get<std::string>() << "\n";
  const auto& totals = doc["totals"];
  std::cout << "trials: " << totals["trials"] << ", violations: " << totals["violations"]
            << ", evaluation-error trials: " << totals["evaluation_error_trials"] << "\n";
  std::printf("%-16s %-6s %10s %12s %10s %14s %14s\n", "id", "eq", "trials", "equal-hits",
              "violations", "min-lo-slack", "min-up-slack");
  for (const auto& e : doc["inequalities"]) {
    auto num = [&](const char* key) -> std::string {
      if (e[key].is_null()) return "-";
      return fmt(e[key].get<double>());
    };
    std::printf("%-16s %-6s %10llu %12llu %10llu %14s %14s\n",
                e["id"].get<std::string>().c_str(), e["paper_eq"].get<std::string>().c_str(),
                static_cast<unsigned long long>(e["trials"].get<std::uint64_t>()),
                static_cast<unsigned long long>(e["equality_hits"].get<std::uint64_t>()),
                static_cast<unsigned long long>(e["violation_count"].get<std::uint64_t>()),
                num("min_lower_slack").c_str(), num("min_upper_slack").c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mean-inequality evaluation and randomized certification"};
  app.require_subcommand(1);

  EvalFlags ef;
  CLI::App* eval = app.add_subcommand("eval", "evaluate one operation");
  eval->add_option("--op", ef.op, "operation name")->required();
  eval->add_option("--a", ef.a, "scalar a > 0");
  eval->add_option("--b", ef.b, "scalar b > 0");
  eval->add_option("--nu", ef.nu, "weight nu in [0,1]");
  eval->add_option("--m", ef.m, "integer power m >= 1");
  eval->add_option("--p", ef.p, "exponent p");
  eval->add_option("--phi", ef.phi, "convex function key: pow:<p>, exp, cpow:<c>:<p>");
  eval->add_option("--variant", ef.variant, "heinz variant: full | halved");
  eval->add_option("--form", ef.form, "sandwich form: theorem | display");
  eval->add_option("--norm", ef.norm, "norm key: trace, hs, schatten:<p>, spectral");
  eval->add_option("--matrix-file", ef.matrix_file, "matrix or triple document path");
  eval->add_option("--w", ef.wq, "quadruple point w");
  eval->add_option("--z", ef.zq, "quadruple point z");
  eval->add_option("--y", ef.yq, "quadruple point y");
  eval->add_option("--x", ef.xq, "quadruple point x");

  VerifyFlags vf;
  CLI::App* verify = app.add_subcommand("verify", "run a certification suite");
  verify->add_option("--suite", vf.suite, "scalar | matrix | all")->required();
  verify->add_option("--trials", vf.trials, "trial count");
  verify->add_option("--seed", vf.seed, "64-bit seed");
  verify->add_option("--dim-max", vf.dim_max, "max matrix dimension");
  verify->add_option("--scalar-range", vf.scalar_range, "log10 range lo:hi");
  verify->add_option("--nu-strategy", vf.nu_strategy, "uniform | boundary");
  verify->add_option("--tol-scalar", vf.tol_scalar, "relative tolerance, scalar suite");
  verify->add_option("--tol-matrix", vf.tol_matrix, "relative tolerance, matrix suite");
  verify->add_option("--out", vf.out, "report file path");
  verify->add_option("--threads", vf.threads, "worker lanes (0 = auto)");
  verify->add_option("--mutate-ineq", vf.mutate_ineq,
                     "test hook: perturb this inequality's lower bound");
  verify->add_option("--mutate-factor", vf.mutate_factor, "test hook factor");

  SweepFlags sf;
  CLI::App* sweep = app.add_subcommand("sweep", "tabulate an inequality over a grid");
  sweep->add_option("--ineq", sf.ineq, "inequality id")->required();
  sweep->add_option("--a", sf.a, "scalar a > 0");
  sweep->add_option("--b", sf.b, "scalar b > 0");
  sweep->add_option("--nu", sf.nu, "nu value or range lo:hi[:step]");
  sweep->add_option("--m", sf.m, "m value or range lo:hi[:step]");
  sweep->add_option("--p", sf.p, "p value or range lo:hi[:step]");
  sweep->add_option("--matrix-file", sf.matrix_file, "triple document path");
  sweep->add_option("--grid", sf.grid, "scan grid size");
  sweep->add_option("--norm", sf.norm, "norm key");
  sweep->add_option("--out", sf.out, "CSV output path");

  std::string report_in;
  CLI::App* report = app.add_subcommand("report", "render a report document");
  report->add_option("--in", report_in, "report file path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(ef);
    if (*verify) return run_verify(vf);
    if (*sweep) return run_sweep(sf);
    if (*report) return run_report(report_in);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const EvalError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "heinzlab/matrix_inequalities.hpp"
#include "heinzlab/scalar_kernel.hpp"

namespace heinzlab {

enum class NuStrategy { Uniform, BoundaryWeighted };
enum class Suite { Scalar, Matrix, All };

struct TrialConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  double log10_min = -3.0;  // scalar magnitudes are log-uniform over
  double log10_max = 3.0;   // [10^log10_min, 10^log10_max]
  int dim_max = 6;
  NuStrategy nu_strategy = NuStrategy::BoundaryWeighted;
  double tol_rel_scalar = 1e-12;
  double tol_rel_matrix = 1e-9;
  void validate() const;  // throws DomainError
};

/// One deterministic scalar trial: a, b log-uniform; nu per strategy
/// (boundary-weighted puts 20% of the mass within 1e-6 of {0, 1/2, 1});
/// m uniform in 1..12; p log-uniform in [1, 8].
struct ScalarTrial {
  PositivePair pair;
  WeightSplit w;
  PowerIndex m;
  ExponentP p;
  int phi_index;                   // selects the catalog exponent for phi checks
  std::array<double, 4> chain_points;  // sorted draws for the slope chain
};

ScalarTrial generate_scalar_trial(const TrialConfig& cfg, std::uint64_t index);

/// One deterministic matrix trial: n uniform in 1..dim_max;
/// A = G*G + 1e-8 I, B = H*H + 1e-8 I with complex Gaussian G, H; X complex
/// Gaussian. With probability 0.2 the triple is all-diagonal instead, feeding
/// the diagonal-reduction oracle.
struct MatrixTrialData {
  MatrixTriple triple;
  WeightSplit w;
  ExponentP p;
  int phi_index;
  bool diagonal;
  std::vector<double> diag_a;  // populated for diagonal trials
  std::vector<double> diag_b;
  std::vector<std::complex<double>> diag_x;
};

MatrixTriple generate_matrix_trial(const TrialConfig& cfg, std::uint64_t index);
MatrixTrialData generate_matrix_trial_data(const TrialConfig& cfg, std::uint64_t index);

struct CheckInfo {
  std::string id;
  std::string equation;  // label used for the report's paper_eq field
  bool log_domain;       // gap statistics are logarithmic (exp catalog member)
};

const std::vector<CheckInfo>& scalar_check_infos();
const std::vector<CheckInfo>& matrix_check_infos();

/// Outcome of one check on one trial.
struct CheckOutcome {
  enum class Status : std::uint8_t { Ok, Error, Skip };
  Status status = Status::Skip;
  int slack_count = 0;
  std::array<double, 3> slack{};  // adjacent gaps, lower-to-upper
  std::array<double, 3> tol{};    // per-gap absolute tolerance
  bool violated = false;
  double worst = 0;  // most negative slack when violated
};

/// Per-trial evaluation entry points (also used by shrinking and tests).
/// `mutate_index` selects the check whose first bound term is scaled by
/// `mutate_factor`; pass -1 for no mutation.
void evaluate_scalar_checks(const ScalarTrial& trial, double tol_rel, int mutate_index,
                            double mutate_factor, std::vector<CheckOutcome>& out);
void evaluate_matrix_checks(const MatrixTrialData& trial, double tol_rel,
                            bool run_scan, int mutate_index, double mutate_factor,
                            std::vector<CheckOutcome>& out);

struct ViolationRecord {
  std::string inequality_id;
  std::uint64_t trial_index = 0;
  std::string inputs;         // serialized trial inputs
  double observed_slack = 0;  // negative
  std::string shrunk_inputs;  // minimal violating inputs after shrinking
  double shrunk_slack = 0;
  int shrink_steps = 0;
};

struct GapStatistics {
  std::string inequality_id;
  std::string paper_eq;
  bool log_domain = false;
  std::uint64_t count = 0;  // attempted minus evaluation errors (and skips)
  std::uint64_t equality_hits = 0;
  std::uint64_t evaluation_errors = 0;
  std::uint64_t violations = 0;
  double min_lower_slack = 0;
  double median_lower_slack = 0;
  double min_upper_slack = 0;
  double median_upper_slack = 0;
};

struct CertifyOptions {
  std::string mutate_inequality;  // test hook: id whose lower bound is perturbed
  double mutate_factor = 1.01;
  int threads = 0;                // 0 = HEINZLAB_THREADS env or hardware
  std::size_t max_recorded_violations_per_check = 256;
};

struct CertifyResult {
  std::string suite;
  std::uint64_t trials = 0;
  std::uint64_t error_trials = 0;  // trials with at least one evaluation error
  bool aborted = false;            // error budget (0.1% of trials) exceeded
  std::vector<GapStatistics> statistics;
  std::vector<ViolationRecord> violations;
  std::uint64_t total_violations = 0;
  bool violations_truncated = false;
};

CertifyResult certify(const TrialConfig& cfg, Suite suite,
                      const CertifyOptions& opts = {});

/// Greedy move toward the nearest equality manifold while the violation
/// persists; at most 64 steps. Throws DomainError when the record does not
/// actually violate under the given configuration.
ViolationRecord shrink(const TrialConfig& cfg, Suite suite, const CertifyOptions& opts,
                       const ViolationRecord& v);

/// Report document (schema "heinzlab-report/1") and one-line summary.
std::string render_report(const TrialConfig& cfg, const CertifyOptions& opts,
                          const CertifyResult& result);
std::string summary_line(const CertifyResult& result);

}  // namespace heinzlab

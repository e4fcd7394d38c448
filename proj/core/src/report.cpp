#include <cmath>
#include <string>

#include <json.hpp>

#include "heinzlab/certifier.hpp"

namespace heinzlab {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON has no non-finite literals; nlohmann would emit null anyway, but make
// the intent explicit.
ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

std::string render_report(const TrialConfig& cfg, const CertifyOptions& opts,
                          const CertifyResult& result) {
  ordered_json doc;
  doc["schema"] = "heinzlab-report/1";
  doc["suite"] = result.suite;
  ordered_json config;
  config["seed"] = cfg.seed;
  config["trials"] = cfg.trials;
  config["scalar_range"] = {cfg.log10_min, cfg.log10_max};
  config["dim_max"] = cfg.dim_max;
  config["nu_strategy"] =
      cfg.nu_strategy == NuStrategy::BoundaryWeighted ? "boundary-weighted" : "uniform";
  config["tol_rel_scalar"] = cfg.tol_rel_scalar;
  config["tol_rel_matrix"] = cfg.tol_rel_matrix;
  if (!opts.mutate_inequality.empty()) {
    config["mutation"] = {{"inequality", opts.mutate_inequality},
                          {"factor", opts.mutate_factor}};
  }
  doc["config"] = std::move(config);
  ordered_json totals;
  totals["trials"] = result.trials;
  totals["inequalities"] = result.statistics.size();
  totals["violations"] = result.total_violations;
  totals["evaluation_error_trials"] = result.error_trials;
  totals["aborted"] = result.aborted;
  totals["violations_truncated"] = result.violations_truncated;
  doc["totals"] = std::move(totals);

  ordered_json entries = ordered_json::array();
  std::size_t vi = 0;
  for (const GapStatistics& st : result.statistics) {
    ordered_json e;
    e["id"] = st.inequality_id;
    e["paper_eq"] = st.paper_eq;
    e["log_domain"] = st.log_domain;
    e["trials"] = st.count;
    e["equality_hits"] = st.equality_hits;
    e["evaluation_errors"] = st.evaluation_errors;
    e["violation_count"] = st.violations;
    e["min_lower_slack"] = number_or_null(st.min_lower_slack);
    e["median_lower_slack"] = number_or_null(st.median_lower_slack);
    e["min_upper_slack"] = number_or_null(st.min_upper_slack);
    e["median_upper_slack"] = number_or_null(st.median_upper_slack);
    ordered_json vlist = ordered_json::array();
    while (vi < result.violations.size() &&
           result.violations[vi].inequality_id == st.inequality_id) {
      const ViolationRecord& rec = result.violations[vi];
      ordered_json v;
      v["trial_index"] = rec.trial_index;
      v["inputs"] = ordered_json::parse(rec.inputs);
      v["observed_slack"] = number_or_null(rec.observed_slack);
      v["shrunk_inputs"] = ordered_json::parse(rec.shrunk_inputs);
      v["shrunk_slack"] = number_or_null(rec.shrunk_slack);
      v["shrink_steps"] = rec.shrink_steps;
      vlist.push_back(std::move(v));
      ++vi;
    }
    e["violations"] = std::move(vlist);
    entries.push_back(std::move(e));
  }
  doc["inequalities"] = std::move(entries);
  return doc.dump(2) + "\n";
}

std::string summary_line(const CertifyResult& result) {
  std::string line;
  bool ok = result.total_violations == 0 && !result.aborted;
  line += ok ? "OK " : "FAIL ";
  line += std::to_string(result.trials) + " trials, " +
          std::to_string(result.statistics.size()) + " inequalities, " +
          std::to_string(result.total_violations) + " violations";
  if (result.error_trials > 0)
    line += ", " + std::to_string(result.error_trials) + " evaluation-error trials";
  if (result.aborted) line += " (evaluation-error budget exceeded)";
  return line;
}

}  // namespace heinzlab

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrev/quadrature.hpp"
#include "qrev/report.hpp"

namespace qrev {

/// Invalid campaign configuration (exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every suite in canonical order.
const std::vector<std::string>& suite_names();

struct CampaignConfig {
  std::vector<std::string> suites = suite_names();
  std::uint64_t seed = 1;
  /// Overrides the per-family trial counts.
  std::optional<int> trials;
  /// Local dimensions cycled through by the random families.
  std::optional<std::vector<int>> dims;
  /// Overrides every check's tolerance.
  std::optional<double> tol;
  QuadratureSpec quad;
  int jobs = 1;
  std::string out;
  std::string format = "json";
  /// Adds wall time to the JSON summary (breaks byte-identical output).
  bool timing = false;

  void validate() const;
};

/// Reads the keys suites, seed, trials, dims, tol, quad_nodes,
/// quad_halfwidth, jobs, out, format into `config`.
void apply_config_json(const Json& j, CampaignConfig& config);

struct TrialRecord {
  std::string suite;
  std::string family;
  int trial = 0;
  Checks checks;
};

struct CampaignResult {
  std::vector<TrialRecord> trials;
  double wall_seconds = 0.0;
  bool all_hold() const;
};

CampaignResult run_campaign(const CampaignConfig& config);

/// Rows for one suite only; used by the CLI and tests.
std::vector<TrialRecord> run_suite(const std::string& suite, const CampaignConfig& config);

Json campaign_json(const CampaignConfig& config, const CampaignResult& result);
void write_csv(std::ostream& os, const CampaignResult& result);
/// Summary block: per-suite check and pass counts and worst slack.
Json summarize(const CampaignResult& result);

/// Concatenates the check rows of several JSON reports and recomputes the
/// summary. Rejects mismatched schema versions.
Json merge_reports(const std::vector<Json>& reports);

/// One line per failing check with what is needed to rerun it.
std::vector<std::string> reproducers(const CampaignConfig& config,
                                     const CampaignResult& result);

struct SweepOptions {
  int n_max = 40;
  int guard = 15;
  std::vector<double> etas{0.7, 0.8, 0.9, 0.99};
  std::vector<double> gains{1.01, 1.1, 1.25};
  double trunc_tol = 1e-6;
};

/// The bosonic grid as check rows.
Checks bosonic_grid(const SweepOptions& options);
/// CSV columns kind, parameter, n_max, guard, lhs, rhs, slack, leakage.
void write_sweep_csv(std::ostream& os, const Checks& checks);

}  // namespace qrev

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "semirad/ensembles.hpp"
#include "semirad/inequalities.hpp"

namespace semirad {

inline constexpr const char* kVersion = "semirad 1.0.0";
inline constexpr const char* kCampaignSchema = "semirad-campaign-v1";
inline constexpr const char* kFailureSchema = "semirad-failure-v1";

// Campaign engine: run the check registry over seeded ensembles, aggregate
// slack statistics, and keep failing instances replayable.  Trials never
// abort the run; failures are collected and surfaced through the exit code.

enum class RankPolicy { Full, Deficient, Both };

RankPolicy rank_policy_from_string(const std::string& s);
const char* to_string(RankPolicy p);

struct CampaignConfig {
  std::vector<int> dims;
  RankPolicy ranks = RankPolicy::Both;
  int trials_per_cell = 1;
  std::vector<CheckId> checks;  // empty means the full registry
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerance_overrides;  // check name -> rel tol
  double residual_tol = 1e-8;
  double scale = 1.0;
  int buzano_samples = 10000;
  RadiusConfig radius;
};

struct CheckAggregate {
  long count = 0;
  long pass_count = 0;
  double min_slack = 0.0;
  double sum_slack = 0.0;
  double max_certified_gap = 0.0;
  double mean_slack() const { return count ? sum_slack / count : 0.0; }
};

// A failing evaluation with operands inline, self-contained for replay.
struct FailureRecord {
  std::string check;
  std::string seed_path;
  double residual_tol = 1e-8;
  double tolerance = 1e-7;
  RadiusConfig radius;
  std::optional<Complex> alpha;
  std::vector<double> bohr_values;
  double bohr_r = 2.0;
  std::uint64_t buzano_seed = 1;
  int buzano_samples = 10000;
  ComplexMatrix a, b;
  std::optional<ComplexMatrix> c;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<std::pair<CheckId, CheckAggregate>> per_check;  // catalog order
  std::map<std::string, double> extra_stats;
  std::vector<FailureRecord> failures;
  double wall_time_s = 0.0;
  std::string version = kVersion;
  std::string rng_name;

  bool all_pass() const { return failures.empty(); }
};

void validate(const CampaignConfig& cfg);

// Deterministic given the config; optional csv sink receives one line per
// evaluation ("dim,rank,trial,check,alpha_re,alpha_im,lhs,rhs,slack,gap,pass").
CampaignReport run_campaign(const CampaignConfig& cfg, std::ostream* csv = nullptr);

std::string format_campaign_report(const CampaignReport& report);

std::string format_failure_record(const FailureRecord& record);
FailureRecord parse_failure_record(const std::string& text);

// Recompute a failure record's check; lhs/rhs are bit-identical to the
// original evaluation within the same build.
BoundReport replay(const FailureRecord& record);

std::string format_bound_report(const BoundReport& report);

}  // namespace semirad

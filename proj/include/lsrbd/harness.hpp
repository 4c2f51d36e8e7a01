#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lsrbd/cnf.hpp"
#include "lsrbd/solver.hpp"

namespace lsrbd {

struct CorpusEntry {
  std::string id;
  Cnf cnf;
};

// Every *.cnf file in `dir`, sorted by file name; id = file name.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

// ---------------------------------------------------------------- lens

struct LensLimits {
  std::optional<std::uint64_t> conflict_limit = 100000;
};

struct LensRow {
  std::string instance;
  RestartPolicy policy = RestartPolicy::luby;
  Status status = Status::limit;
  std::optional<double> lsr_over_v;  // absent unless SAT/UNSAT
  std::optional<double> avg_clause_lsr_over_v;
  std::uint64_t conflicts = 0;
  double time_s = 0.0;
};

// Rows ordered by instance index, then by position in `policies`.
// `threads` = 0 uses the OpenMP default.
std::vector<LensRow> run_lens(const std::vector<CorpusEntry>& corpus, const std::vector<RestartPolicy>& policies,
                              std::uint64_t seed, const LensLimits& limits, int threads = 0);
std::vector<LensRow> run_lens_serial(const std::vector<CorpusEntry>& corpus,
                                     const std::vector<RestartPolicy>& policies, std::uint64_t seed,
                                     const LensLimits& limits);

// Timing makes output run-dependent; leave it out for reproducible files.
void write_lens_csv(const std::vector<LensRow>& rows, std::ostream& out, bool include_time = true);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
};

struct LensPolicySummary {
  RestartPolicy policy = RestartPolicy::luby;
  MeanSd lsr_over_v;
  MeanSd avg_clause_lsr_over_v;
  MeanSd conflicts;
  MeanSd time_s;
};

struct LensSummary {
  std::vector<LensPolicySummary> policies;  // in input policy order
  std::size_t instances_used = 0;
  std::size_t instances_excluded = 0;  // LIMIT under at least one policy
};

LensSummary summarize_lens(const std::vector<LensRow>& rows, const std::vector<RestartPolicy>& policies);
void print_lens_table(const LensSummary& s, std::ostream& out);

// ---------------------------------------------------------------- params

struct ParamBudgets {
  std::optional<std::uint64_t> solve_conflicts = 100000;
  std::optional<std::uint64_t> backbone_conflicts = 100000;
  std::uint64_t weak_checks = 2000;
  std::uint64_t seed = 0;
  RestartPolicy policy = RestartPolicy::luby;
};

struct FeatureRow {
  std::string instance;
  std::map<std::string, double> features;  // absent key = missing value
  std::optional<double> target;            // ln(solve seconds)
};

// Column order of the params CSV.
const std::vector<std::string>& feature_names();
inline constexpr const char* kTargetName = "log_time";
// Floor applied to solve time before the logarithm.
inline constexpr double kMinTimeSeconds = 1e-6;

FeatureRow compute_features(const CorpusEntry& e, const ParamBudgets& budgets);
std::vector<FeatureRow> run_params(const std::vector<CorpusEntry>& corpus, const ParamBudgets& budgets,
                                   int threads = 0);
std::vector<FeatureRow> run_params_serial(const std::vector<CorpusEntry>& corpus, const ParamBudgets& budgets);

void write_features_csv(const std::vector<FeatureRow>& rows, std::ostream& out);
std::vector<FeatureRow> read_features_csv(std::istream& in);

// ---------------------------------------------------------------- regression

struct ExpandedFeatures {
  std::vector<std::string> names;  // products joined by '*', last is "intercept"
  Eigen::MatrixXd matrix;          // rows x names.size()
};

// All nonempty products of distinct columns of `base`, by subset size then
// lexicographic index order, followed by a column of ones.
ExpandedFeatures expand_features(const std::vector<std::string>& base_names, const Eigen::MatrixXd& base);

struct Standardized {
  Eigen::MatrixXd z;
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;  // population sd
};

Standardized standardize(const Eigen::MatrixXd& x);

inline constexpr double kDefaultLambda = 1.0;

struct RidgeModel {
  std::vector<std::string> feature_names;  // kept features, then "intercept"
  Eigen::VectorXd coefficients;            // standardized scale; intercept = mean(y)
  Eigen::VectorXd raw_coefficients;        // original feature scale
  double lambda = kDefaultLambda;
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_excluded = 0;
  std::vector<std::string> dropped;  // zero-variance features
  std::vector<std::string> warnings;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd design;  // standardized, without the intercept column
};

RidgeModel ridge_fit(const std::vector<FeatureRow>& rows, const std::vector<std::string>& base,
                     double lambda = kDefaultLambda);
// Same fit on a ready matrix of base columns.
RidgeModel ridge_fit(const std::vector<std::string>& base_names, const Eigen::MatrixXd& base,
                     const Eigen::VectorXd& y, double lambda = kDefaultLambda);

void write_model(const RidgeModel& m, std::ostream& out);

}  // namespace lsrbd

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chebdiff/coeff_grid.hpp"
#include "chebdiff/model.hpp"
#include "chebdiff/norms.hpp"
#include "chebdiff/transform.hpp"
#include "chebdiff/tuning.hpp"

namespace chebdiff {

enum class TestFunctionKind { ClassMember, NamedAnalytic };

/// Function whose derivative the experiment tries to recover.
///
/// ClassMember: make_class_member(wiener, max_k, max_j, seed + trial, margin).
/// NamedAnalytic: analyze(named_function(id), max_k, max_j); the same for
/// every trial.
struct TestFunctionSpec {
  TestFunctionKind kind = TestFunctionKind::ClassMember;
  std::uint64_t seed = 0;
  int max_k = 255;
  int max_j = 255;
  double margin = kDefaultDecayMargin;
  std::string id;
};

/// Analytic test functions: exp_cos (e^t cos tau), exp_cos_half_pi
/// (e^t cos(pi tau / 2)), poly_t3 (t^3), poly_t3_tau2 (t^3 tau^2),
/// sin_sum (sin(2t + tau)). Throws std::invalid_argument for unknown ids.
BivariateFunction named_function(const std::string& id);
std::vector<std::string> named_function_ids();

/// Coefficients of the test function for one trial.
CoeffGrid make_test_coeffs(const TestFunctionSpec& spec, const WienerSpec& wiener, int trial);

struct ExperimentConfig {
  ProblemSpec problem;  // problem.metric is ignored; see metrics
  NoiseMode noise_mode = NoiseMode::AdversarialTopweight;
  std::uint64_t noise_seed = 0;
  std::vector<double> deltas;
  int trials_per_delta = 10;
  double gamma = 1.0;
  TestFunctionSpec test_function;
  std::vector<MetricSpec> metrics{MetricSpec::l2()};
  std::string output_path;

  /// Throws std::invalid_argument on structural problems: empty or
  /// non-decreasing deltas, deltas outside (0,1), trials < 1, no metrics,
  /// bad test-function box. Smoothness hypotheses are checked separately
  /// (check_admissible).
  void validate() const;

  /// problem with metric replaced.
  ProblemSpec problem_for(const MetricSpec& metric) const;
};

/// Violation of a smoothness hypothesis or an inadmissible gamma, for any
/// of the config's metrics; nullopt when the experiment may run.
std::optional<SpecViolation> check_admissible(const ExperimentConfig& config);

struct RateRow {
  double delta = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;  // sample standard deviation across trials
  int n_used = 0;
  std::size_t cardinality = 0;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::pair<double, double> slope_ci{0.0, 0.0};  // 95%
};

struct RateReport {
  MetricSpec metric;
  std::vector<RateRow> rows;  // descending delta
  double fitted_slope = 0.0;
  double intercept = 0.0;
  double theoretical_slope = 0.0;
  std::pair<double, double> slope_ci{0.0, 0.0};
};

struct TrialRecord {
  double delta = 0.0;
  int trial = 0;
  std::string metric;
  int n = 0;
  double gamma = 0.0;
  std::size_t cardinality = 0;
  double error = 0.0;
};

struct ConvergenceResult {
  std::vector<RateReport> reports;  // one per metric, config order
  std::vector<TrialRecord> trials;  // delta-major, then trial, then metric
};

/// Error of the method for (delta, n, trial) in the given metric.
using ErrorOracle = std::function<double(double delta, int n, int trial, const MetricSpec& metric)>;

/// Full pipeline per delta and trial: test function, noise over the cross
/// (choose_n(delta), gamma, r), truncated derivative, error against the
/// untruncated derivative of the test function, then a log-log fit per
/// metric. Throws std::invalid_argument when the config is invalid or
/// check_admissible reports a violation.
ConvergenceResult run_convergence(const ExperimentConfig& config);

/// Same bookkeeping and fitting with errors supplied by oracle.
ConvergenceResult run_convergence(const ExperimentConfig& config, const ErrorOracle& oracle);

/// Noise-free truncation error for each n in ns, test function of trial 0.
std::vector<double> truncation_sweep(const ExperimentConfig& config, const std::vector<int>& ns,
                                     const MetricSpec& metric);

/// Least squares on (log delta, log error) with a Student-t 95% interval
/// for the slope. Throws std::invalid_argument for fewer than 3 points or
/// nonpositive values.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

/// Parses the JSON config document. Throws ParseError on malformed JSON
/// or wrong field types and std::invalid_argument on bad values.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Columns delta,trial,metric,n,gamma,cardinality,error.
void write_trials_csv(std::ostream& out, const ConvergenceResult& result);
void write_report_json(std::ostream& out, const ExperimentConfig& config, const ConvergenceResult& result);

/// Writes trials.csv and report.json into dir (created if missing).
void write_experiment_output(const std::filesystem::path& dir, const ExperimentConfig& config,
                             const ConvergenceResult& result);

/// Single-shot differentiation of a coefficient table.
struct SingleResult {
  CoeffGrid derivative;
  std::vector<double> grid;  // eval points per dimension; empty if none
  Matrix values;             // values(i, m) at (grid[i], grid[m])
};

/// truncated_derivative(coeffs, n, gamma, r), optionally sampled on the
/// eval_grid x eval_grid cosine grid (0 for none).
SingleResult run_single(const CoeffGrid& coeffs, int n, double gamma, int r, int eval_grid = 0);

/// Columns t,tau,value.
void write_values_csv(std::ostream& out, const SingleResult& result);

}  // namespace chebdiff

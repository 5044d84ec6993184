#include "chebdiff/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "chebdiff/coeff_io.hpp"
#include "chebdiff/errors.hpp"
#include "chebdiff/experiment.hpp"
#include "chebdiff/hypercross.hpp"
#include "chebdiff/tuning.hpp"
#include "chebdiff/validate.hpp"

namespace chebdiff {

namespace {

struct DifferentiateArgs {
  std::string input;
  std::string output;
  int r = 1;
  int n = 0;
  double gamma = 1.0;
  int eval_grid = 0;
  bool auto_n = false;
  double delta = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double s = 1.0;
  std::string p = "2";
  double level_constant = 1.0;
};

struct ExperimentArgs {
  std::string config;
  std::string output;
  std::optional<double> gamma;
  std::optional<double> level_constant;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> noise_seed;
};

struct CrossArgs {
  int n = 0;
  double gamma = 1.0;
  int r = 1;
  bool count = false;
};

struct ValidateArgs {
  bool json = false;
  double zeta0 = kZeta0;
};

double parse_p(const std::string& text) {
  if (text == "inf") return kInf;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad value for --p: '" + text + "'");
  return v;
}

int report_violation(std::ostream& err, const SpecViolation& v) {
  err << "error: inadmissible parameters, violated: " << v.inequality << "\n  " << v.message << '\n';
  return kExitInvalid;
}

int differentiate(const DifferentiateArgs& a, std::ostream& out, std::ostream& err) {
  int n = a.n;
  if (a.auto_n) {
    ProblemSpec spec;
    spec.r = a.r;
    spec.wiener = {a.s, a.mu1, a.mu2 > 0.0 ? a.mu2 : a.mu1};
    spec.noise_p = parse_p(a.p);
    spec.level_constant = a.level_constant;
    if (auto v = validate_spec(spec)) return report_violation(err, *v);
    n = choose_n(a.delta, spec);
    out << "n = " << n << '\n';
  } else if (n <= 0) {
    err << "error: --n is required unless --auto-n is given\n";
    return kExitInvalid;
  }
  const auto coeffs = load_coeffs(a.input);
  const auto result = run_single(coeffs, n, a.gamma, a.r, a.eval_grid);
  save_coeffs(a.output, result.derivative);
  if (a.eval_grid > 0) {
    const std::string path = a.output + ".values.csv";
    std::ofstream vals(path);
    if (!vals) throw IoError("cannot write '" + path + "'");
    write_values_csv(vals, result);
    if (!vals) throw IoError("write failed for '" + path + "'");
  }
  out << "wrote " << result.derivative.nonzero_count() << " coefficients to " << a.output << '\n';
  return kExitOk;
}

int experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  auto config = load_experiment_config(a.config);
  if (a.gamma) config.gamma = *a.gamma;
  if (a.level_constant) config.problem.level_constant = *a.level_constant;
  if (a.trials) config.trials_per_delta = *a.trials;
  if (a.seed) config.test_function.seed = *a.seed;
  if (a.noise_seed) config.noise_seed = *a.noise_seed;
  if (!a.output.empty()) config.output_path = a.output;
  if (config.output_path.empty()) config.output_path = "experiment_out";

  config.validate();
  if (auto v = check_admissible(config)) return report_violation(err, *v);

  const auto result = run_convergence(config);
  write_experiment_output(config.output_path, config, result);
  for (const auto& rep : result.reports) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%-8s fitted slope %.4f  95%% CI [%.4f, %.4f]  theoretical %.4f\n",
                  rep.metric.label().c_str(), rep.fitted_slope, rep.slope_ci.first, rep.slope_ci.second,
                  rep.theoretical_slope);
    out << buf;
  }
  out << "results in " << config.output_path << '\n';
  return kExitOk;
}

int cross(const CrossArgs& a, std::ostream& out) {
  const CrossIndexSet set(a.n, a.gamma, a.r);
  if (a.count) {
    out << set.size() << '\n';
    return kExitOk;
  }
  out << "k,j\n";
  for (const auto& idx : set) out << idx.k << ',' << idx.j << '\n';
  return kExitOk;
}

int validate(const ValidateArgs& a, std::ostream& out) {
  ValidationOptions opts;
  opts.zeta0 = a.zeta0;
  const auto report = validate_suite(opts);
  if (a.json) {
    write_validation_json(out, report);
  } else {
    write_validation_text(out, report);
  }
  return report.all_passed() ? kExitOk : kExitInvalid;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derivative recovery from noisy Fourier-Chebyshev coefficients", "chebdiff"};
  app.require_subcommand(1);

  DifferentiateArgs d;
  auto* diff = app.add_subcommand("differentiate", "Truncated r-th t-derivative of a coefficient file");
  diff->add_option("--input", d.input, "Coefficient file (.csv or .json)")->required();
  diff->add_option("--output", d.output, "Derivative coefficient file")->required();
  diff->add_option("--r", d.r, "Derivative order")->check(CLI::PositiveNumber);
  diff->add_option("--n", d.n, "Truncation level");
  diff->add_option("--gamma", d.gamma, "Cross shape parameter, >= 1");
  diff->add_option("--eval-grid", d.eval_grid, "Also write values on an M x M cosine grid");
  diff->add_flag("--auto-n", d.auto_n, "Choose n from the noise level and smoothness");
  diff->add_option("--delta", d.delta, "Noise level for --auto-n");
  diff->add_option("--mu1", d.mu1, "Smoothness in t for --auto-n");
  diff->add_option("--mu2", d.mu2, "Smoothness in tau for --auto-n (default mu1)");
  diff->add_option("--s", d.s, "Wiener exponent for --auto-n");
  diff->add_option("--p", d.p, "Noise norm exponent for --auto-n (number or inf)");
  diff->add_option("--level-constant", d.level_constant, "Constant in the n rule");

  ExperimentArgs e;
  auto* exp = app.add_subcommand("experiment", "Noise-level sweep with convergence-rate fit");
  exp->add_option("--config", e.config, "JSON config")->required();
  exp->add_option("--output", e.output, "Output directory");
  exp->add_option("--gamma", e.gamma, "Override gamma");
  exp->add_option("--level-constant", e.level_constant, "Override level_constant");
  exp->add_option("--trials-per-delta", e.trials, "Override trials_per_delta");
  exp->add_option("--seed", e.seed, "Override test-function seed");
  exp->add_option("--noise-seed", e.noise_seed, "Override noise seed");

  CrossArgs c;
  auto* crs = app.add_subcommand("cross", "List the hyperbolic cross");
  crs->add_option("--n", c.n, "Level")->required();
  crs->add_option("--gamma", c.gamma, "Shape parameter")->required();
  crs->add_option("--r", c.r, "Smallest k")->required();
  crs->add_flag("--count", c.count, "Print only the number of indices");

  ValidateArgs v;
  auto* val = app.add_subcommand("validate", "Run the invariant checks");
  val->add_flag("--json", v.json, "Machine-readable report");
  val->add_option("--zeta0", v.zeta0, "T_0 weight used by the derivative checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*diff) return differentiate(d, out, err);
    if (*exp) return experiment(e, out, err);
    if (*crs) return cross(c, out);
    if (*val) return validate(v, out);
  } catch (const ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace chebdiff

#include "chebdiff/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "chebdiff/basis.hpp"
#include "chebdiff/diffop.hpp"
#include "chebdiff/errors.hpp"
#include "chebdiff/hypercross.hpp"

namespace chebdiff {

using nlohmann::json;

namespace {

const std::map<std::string, BivariateFunction>& analytic_table() {
  static const std::map<std::string, BivariateFunction> table{
      {"exp_cos", [](double t, double tau) { return std::exp(t) * std::cos(tau); }},
      {"exp_cos_half_pi", [](double t, double tau) { return std::exp(t) * std::cos(kPi * tau / 2.0); }},
      {"poly_t3", [](double t, double) { return t * t * t; }},
      {"poly_t3_tau2", [](double t, double tau) { return t * t * t * tau * tau; }},
      {"sin_sum", [](double t, double tau) { return std::sin(2.0 * t + tau); }},
  };
  return table;
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Reference derivative of one trial's test function, pre-sampled where the
// metric needs point values.
class TrialReference {
 public:
  TrialReference(const CoeffGrid& coeffs, int r, const std::vector<MetricSpec>& metrics)
      : derivative_(differentiate_coeffs(coeffs, r)) {
    for (const auto& m : metrics) {
      if (m.kind == MetricKind::Uniform) {
        const int grid = m.eval_grid > 0 ? m.eval_grid : kDefaultSupGrid;
        if (!sup_.contains(grid)) {
          auto pts = lobatto_points(grid);
          auto vals = grid_synthesize(derivative_, pts, pts);
          sup_.emplace(grid, Sampled{std::move(pts), std::move(vals)});
        }
      } else if (m.kind == MetricKind::LqWeighted && !lq_) {
        auto nodes = gauss_chebyshev_rule(default_lq_nodes(derivative_)).nodes;
        auto vals = grid_synthesize(derivative_, nodes, nodes);
        lq_ = Sampled{std::move(nodes), std::move(vals)};
      }
    }
  }

  double error(const CoeffGrid& estimate, const MetricSpec& metric) const {
    switch (metric.kind) {
      case MetricKind::L2Weighted:
        return l2_omega_norm(derivative_ - estimate);
      case MetricKind::Uniform: {
        const auto& s = sup_.at(metric.eval_grid > 0 ? metric.eval_grid : kDefaultSupGrid);
        return max_abs(difference(s, estimate));
      }
      case MetricKind::LqWeighted:
        return lq_from_samples(difference(*lq_, estimate), metric.q);
    }
    return std::numeric_limits<double>::quiet_NaN();
  }

 private:
  struct Sampled {
    std::vector<double> points;
    Matrix values;
  };

  static Matrix difference(const Sampled& s, const CoeffGrid& estimate) {
    Matrix d = grid_synthesize(estimate, s.points, s.points);
    for (std::size_t i = 0; i < d.data.size(); ++i) d.data[i] = s.values.data[i] - d.data[i];
    return d;
  }

  CoeffGrid derivative_;
  std::map<int, Sampled> sup_;
  std::optional<Sampled> lq_;
};

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// errors[d][t][m] -> reports + records
ConvergenceResult assemble(const ExperimentConfig& config, const std::vector<int>& ns,
                           const std::vector<std::size_t>& cards,
                           const std::vector<std::vector<std::vector<double>>>& errors) {
  ConvergenceResult out;
  const std::size_t nd = config.deltas.size();
  const std::size_t nt = static_cast<std::size_t>(config.trials_per_delta);
  for (std::size_t d = 0; d < nd; ++d) {
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t m = 0; m < config.metrics.size(); ++m) {
        out.trials.push_back(TrialRecord{config.deltas[d], static_cast<int>(t), config.metrics[m].label(), ns[d],
                                         config.gamma, cards[d], errors[d][t][m]});
      }
    }
  }
  for (std::size_t m = 0; m < config.metrics.size(); ++m) {
    RateReport rep;
    rep.metric = config.metrics[m];
    rep.theoretical_slope = theoretical_rate(config.problem_for(config.metrics[m]));
    std::vector<std::pair<double, double>> points;
    for (std::size_t d = 0; d < nd; ++d) {
      std::vector<double> e(nt);
      for (std::size_t t = 0; t < nt; ++t) e[t] = errors[d][t][m];
      RateRow row;
      row.delta = config.deltas[d];
      row.mean_error = mean_of(e);
      row.std_error = sample_stddev(e, row.mean_error);
      row.n_used = ns[d];
      row.cardinality = cards[d];
      rep.rows.push_back(row);
      points.emplace_back(row.delta, row.mean_error);
    }
    const auto fit = fit_rate(points);
    rep.fitted_slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.slope_ci = fit.slope_ci;
    out.reports.push_back(std::move(rep));
  }
  return out;
}

void require_runnable(const ExperimentConfig& config) {
  config.validate();
  if (auto v = check_admissible(config)) throw std::invalid_argument(v->message);
}

}  // namespace

BivariateFunction named_function(const std::string& id) {
  const auto& table = analytic_table();
  const auto it = table.find(id);
  if (it == table.end()) throw std::invalid_argument("unknown test function '" + id + "'");
  return it->second;
}

std::vector<std::string> named_function_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, fn] : analytic_table()) ids.push_back(id);
  return ids;
}

CoeffGrid make_test_coeffs(const TestFunctionSpec& spec, const WienerSpec& wiener, int trial) {
  if (spec.kind == TestFunctionKind::ClassMember) {
    return make_class_member(wiener, spec.max_k, spec.max_j, spec.seed + static_cast<std::uint64_t>(trial),
                             spec.margin);
  }
  return analyze(named_function(spec.id), spec.max_k, spec.max_j);
}

void ExperimentConfig::validate() const {
  if (deltas.empty()) throw std::invalid_argument("experiment needs at least one delta");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0 && deltas[i] < 1.0)) throw std::invalid_argument("every delta must lie in (0, 1)");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw std::invalid_argument("deltas must be strictly decreasing");
  }
  if (trials_per_delta < 1) throw std::invalid_argument("trials_per_delta must be at least 1");
  if (metrics.empty()) throw std::invalid_argument("experiment needs at least one metric");
  for (const auto& m : metrics) m.validate();
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and >= 1");
  if (test_function.max_k < 1 || test_function.max_j < 0) {
    throw std::invalid_argument("test function box must have max_k >= 1 and max_j >= 0");
  }
  if (test_function.kind == TestFunctionKind::ClassMember && !(test_function.margin > 0.0)) {
    throw std::invalid_argument("class-member decay margin must be positive");
  }
  if (test_function.kind == TestFunctionKind::NamedAnalytic) named_function(test_function.id);
}

ProblemSpec ExperimentConfig::problem_for(const MetricSpec& metric) const {
  ProblemSpec p = problem;
  p.metric = metric;
  return p;
}

std::optional<SpecViolation> check_admissible(const ExperimentConfig& config) {
  for (const auto& m : config.metrics) {
    const auto spec = config.problem_for(m);
    if (auto v = validate_spec(spec)) return v;
    const auto range = gamma_range(spec);
    if (range.empty()) {
      return SpecViolation{"γ_max > 1", "metric " + m.label() + ": admissible gamma range is empty"};
    }
    if (!range.admits(config.gamma)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "metric %s: gamma = %g outside [1, %g)", m.label().c_str(), config.gamma,
                    range.upper);
      return SpecViolation{"1 ≤ γ < γ_max", buf};
    }
  }
  return std::nullopt;
}

ConvergenceResult run_convergence(const ExperimentConfig& config, const ErrorOracle& oracle) {
  require_runnable(config);
  const int r = config.problem.r;
  std::vector<int> ns;
  std::vector<std::size_t> cards;
  for (double d : config.deltas) {
    ns.push_back(choose_n(d, config.problem));
    cards.push_back(cardinality(ns.back(), config.gamma, r));
  }
  const std::size_t nt = static_cast<std::size_t>(config.trials_per_delta);
  std::vector<std::vector<std::vector<double>>> errors(
      config.deltas.size(), std::vector<std::vector<double>>(nt, std::vector<double>(config.metrics.size())));
  for (std::size_t d = 0; d < config.deltas.size(); ++d) {
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t m = 0; m < config.metrics.size(); ++m) {
        errors[d][t][m] = oracle(config.deltas[d], ns[d], static_cast<int>(t), config.metrics[m]);
      }
    }
  }
  return assemble(config, ns, cards, errors);
}

ConvergenceResult run_convergence(const ExperimentConfig& config) {
  require_runnable(config);
  const int r = config.problem.r;
  const std::size_t nd = config.deltas.size();
  const std::size_t nt = static_cast<std::size_t>(config.trials_per_delta);

  std::vector<int> ns;
  std::vector<std::size_t> cards;
  std::vector<CrossIndexSet> crosses;
  for (double d : config.deltas) {
    ns.push_back(choose_n(d, config.problem));
    crosses.emplace_back(ns.back(), config.gamma, r);
    cards.push_back(crosses.back().size());
  }

  std::vector<std::vector<std::vector<double>>> errors(
      nd, std::vector<std::vector<double>>(nt, std::vector<double>(config.metrics.size())));
  // Trial-major so that only one reference surface set is alive at a time.
  for (std::size_t t = 0; t < nt; ++t) {
    const auto coeffs = make_test_coeffs(config.test_function, config.problem.wiener, static_cast<int>(t));
    const TrialReference ref(coeffs, r, config.metrics);
    for (std::size_t d = 0; d < nd; ++d) {
      NoiseSpec noise;
      noise.p = config.problem.noise_p;
      noise.delta = config.deltas[d];
      noise.mode = config.noise_mode;
      noise.seed = config.noise_seed + t;
      const auto& cross = crosses[d];
      const auto noisy = restrict_to(coeffs, cross) + noise_vector(noise, cross);
      const auto estimate = truncated_derivative(noisy, ns[d], config.gamma, r);
      for (std::size_t m = 0; m < config.metrics.size(); ++m) {
        errors[d][t][m] = ref.error(estimate, config.metrics[m]);
      }
    }
  }
  return assemble(config, ns, cards, errors);
}

std::vector<double> truncation_sweep(const ExperimentConfig& config, const std::vector<int>& ns,
                                     const MetricSpec& metric) {
  metric.validate();
  const int r = config.problem.r;
  const auto coeffs = make_test_coeffs(config.test_function, config.problem.wiener, 0);
  const TrialReference ref(coeffs, r, {metric});
  std::vector<double> out;
  for (int n : ns) out.push_back(ref.error(truncated_derivative(coeffs, n, config.gamma, r), metric));
  return out;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("rate fit needs at least 3 points");
  const std::size_t n = points.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [d, e] = points[i];
    if (!(d > 0.0) || !(e > 0.0) || !std::isfinite(d) || !std::isfinite(e)) {
      throw std::invalid_argument("rate fit needs positive finite deltas and errors");
    }
    x[i] = std::log(d);
    y[i] = std::log(e);
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("rate fit needs at least two distinct deltas");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = y[i] - fit.intercept - fit.slope * x[i];
    ssr += res * res;
  }
  const double df = static_cast<double>(n - 2);
  const double se = std::sqrt(ssr / df / sxx);
  const boost::math::students_t dist(df);
  const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
  fit.slope_ci = {fit.slope - tq * se, fit.slope + tq * se};
  return fit;
}

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

double parse_exponent(const json& v, const char* field) {
  if (v.is_string() && v.get<std::string>() == "inf") return kInf;
  if (v.is_number()) return v.get<double>();
  throw ParseError(0, std::string("field '") + field + "' must be a number or \"inf\"");
}

template <class T>
T field_or(const json& obj, const char* name, T fallback) {
  if (!obj.contains(name)) return fallback;
  try {
    return obj.at(name).get<T>();
  } catch (const json::exception&) {
    throw ParseError(0, std::string("field '") + name + "' has the wrong type");
  }
}

const json& object_field(const json& obj, const char* name) {
  static const json empty = json::object();
  if (!obj.contains(name)) return empty;
  const auto& v = obj.at(name);
  if (!v.is_object()) throw ParseError(0, std::string("field '") + name + "' must be an object");
  return v;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_offset(text, e.byte), std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(0, "config must be a JSON object");

  ExperimentConfig c;
  c.problem.r = field_or(doc, "r", 1);
  c.problem.level_constant = field_or(doc, "level_constant", 1.0);

  const auto& wiener = object_field(doc, "wiener");
  c.problem.wiener.s = field_or(wiener, "s", 1.0);
  c.problem.wiener.mu1 = field_or(wiener, "mu1", 1.0);
  c.problem.wiener.mu2 = field_or(wiener, "mu2", 1.0);

  const auto& noise = object_field(doc, "noise");
  if (noise.contains("p")) c.problem.noise_p = parse_exponent(noise.at("p"), "p");
  try {
    c.noise_mode = parse_noise_mode(field_or<std::string>(noise, "mode", "adversarial-topweight"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  c.noise_seed = field_or<std::uint64_t>(noise, "seed", 0);

  c.deltas = field_or(doc, "deltas", std::vector<double>{});
  c.trials_per_delta = field_or(doc, "trials_per_delta", 10);
  c.gamma = field_or(doc, "gamma", 1.0);
  c.output_path = field_or<std::string>(doc, "output_path", "");

  if (doc.contains("metrics")) {
    c.metrics.clear();
    for (const auto& m : field_or(doc, "metrics", std::vector<std::string>{})) {
      try {
        c.metrics.push_back(parse_metric(m));
      } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
      }
    }
  }
  const int sup_grid = field_or(doc, "sup_grid", 0);
  for (auto& m : c.metrics) {
    if (m.kind == MetricKind::Uniform) m.eval_grid = sup_grid;
  }

  const auto& tf = object_field(doc, "test_function");
  const auto kind = field_or<std::string>(tf, "kind", "class-member");
  if (kind == "class-member") {
    c.test_function.kind = TestFunctionKind::ClassMember;
  } else if (kind == "named-analytic") {
    c.test_function.kind = TestFunctionKind::NamedAnalytic;
    c.test_function.id = field_or<std::string>(tf, "id", "");
    c.test_function.max_k = 64;
    c.test_function.max_j = 64;
  } else {
    throw ParseError(0, "unknown test_function kind '" + kind + "'");
  }
  c.test_function.seed = field_or<std::uint64_t>(tf, "seed", 0);
  c.test_function.max_k = field_or(tf, "max_k", c.test_function.max_k);
  c.test_function.max_j = field_or(tf, "max_j", c.test_function.max_j);
  c.test_function.margin = field_or(tf, "epsilon", c.test_function.margin);
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

void write_trials_csv(std::ostream& out, const ConvergenceResult& result) {
  out << "delta,trial,metric,n,gamma,cardinality,error\n";
  for (const auto& t : result.trials) {
    out << fmt_g(t.delta) << ',' << t.trial << ',' << t.metric << ',' << t.n << ',' << fmt_g(t.gamma) << ','
        << t.cardinality << ',' << fmt_g(t.error) << '\n';
  }
}

void write_report_json(std::ostream& out, const ExperimentConfig& config, const ConvergenceResult& result) {
  json doc;
  const auto& p = config.problem;
  json noise_p = std::isinf(p.noise_p) ? json("inf") : json(p.noise_p);
  doc["config"] = {
      {"r", p.r},
      {"wiener", {{"s", p.wiener.s}, {"mu1", p.wiener.mu1}, {"mu2", p.wiener.mu2}}},
      {"noise", {{"p", noise_p}, {"mode", to_string(config.noise_mode)}, {"seed", config.noise_seed}}},
      {"level_constant", p.level_constant},
      {"gamma", config.gamma},
      {"deltas", config.deltas},
      {"trials_per_delta", config.trials_per_delta},
  };
  json tf = {{"seed", config.test_function.seed},
             {"max_k", config.test_function.max_k},
             {"max_j", config.test_function.max_j}};
  if (config.test_function.kind == TestFunctionKind::ClassMember) {
    tf["kind"] = "class-member";
    tf["epsilon"] = config.test_function.margin;
  } else {
    tf["kind"] = "named-analytic";
    tf["id"] = config.test_function.id;
  }
  doc["config"]["test_function"] = tf;

  json reports = json::array();
  for (const auto& rep : result.reports) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
      rows.push_back({{"delta", row.delta},
                      {"mean_error", row.mean_error},
                      {"std_error", row.std_error},
                      {"n_used", row.n_used},
                      {"cardinality", row.cardinality}});
    }
    reports.push_back({{"metric", rep.metric.label()},
                       {"rows", rows},
                       {"fitted_slope", rep.fitted_slope},
                       {"intercept", rep.intercept},
                       {"theoretical_slope", rep.theoretical_slope},
                       {"slope_ci", {rep.slope_ci.first, rep.slope_ci.second}}});
  }
  doc["reports"] = reports;
  out << doc.dump(2) << '\n';
}

void write_experiment_output(const std::filesystem::path& dir, const ExperimentConfig& config,
                             const ConvergenceResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::ofstream csv(dir / "trials.csv");
  if (!csv) throw IoError("cannot write '" + (dir / "trials.csv").string() + "'");
  write_trials_csv(csv, result);
  std::ofstream rep(dir / "report.json");
  if (!rep) throw IoError("cannot write '" + (dir / "report.json").string() + "'");
  write_report_json(rep, config, result);
  if (!csv || !rep) throw IoError("write failed in '" + dir.string() + "'");
}

SingleResult run_single(const CoeffGrid& coeffs, int n, double gamma, int r, int eval_grid) {
  if (eval_grid == 1 || eval_grid < 0) throw std::invalid_argument("eval grid needs at least 2 points");
  SingleResult out;
  out.derivative = truncated_derivative(coeffs, n, gamma, r);
  if (eval_grid > 0) {
    out.grid = lobatto_points(eval_grid);
    out.values = grid_synthesize(out.derivative, out.grid, out.grid);
  }
  return out;
}

void write_values_csv(std::ostream& out, const SingleResult& result) {
  out << "t,tau,value\n";
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    for (std::size_t m = 0; m < result.grid.size(); ++m) {
      out << fmt_g(result.grid[i]) << ',' << fmt_g(result.grid[m]) << ',' << fmt_g(result.values(i, m)) << '\n';
    }
  }
}

}  // namespace chebdiff

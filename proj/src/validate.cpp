#include "chebdiff/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <ostream>
#include <random>
#include <vector>

#include <json.hpp>

#include "chebdiff/basis.hpp"
#include "chebdiff/coeff_grid.hpp"
#include "chebdiff/experiment.hpp"
#include "chebdiff/hypercross.hpp"
#include "chebdiff/model.hpp"
#include "chebdiff/norms.hpp"
#include "chebdiff/transform.hpp"
#include "chebdiff/tuning.hpp"

namespace chebdiff {

namespace {

struct Measured {
  double value = 0.0;
  std::string detail;
};

enum class Compare { AtMost, AtLeast, Equal };

class Suite {
 public:
  void run(const char* name, const char* module, Compare cmp, double threshold, const std::function<Measured()>& fn) {
    CheckResult res;
    res.name = name;
    res.module = module;
    res.threshold = threshold;
    try {
      const auto m = fn();
      res.measured = m.value;
      res.detail = m.detail;
      switch (cmp) {
        case Compare::AtMost:
          res.passed = m.value <= threshold;
          break;
        case Compare::AtLeast:
          res.passed = m.value >= threshold;
          break;
        case Compare::Equal:
          res.passed = m.value == threshold;
          break;
      }
    } catch (const std::exception& e) {
      res.passed = false;
      res.measured = std::nan("");
      res.detail = std::string("exception: ") + e.what();
    }
    checks.push_back(std::move(res));
  }

  std::vector<CheckResult> checks;
};

CoeffGrid random_grid(std::mt19937_64& rng, int max_k, int max_j) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(max_k + 1) * static_cast<std::size_t>(max_j + 1));
  for (auto& v : values) v = u(rng);
  return CoeffGrid::from_dense(max_k, max_j, std::move(values));
}

std::size_t brute_cardinality(int n, double gamma, int r) {
  std::size_t count = 0;
  for (int k = r; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      if (j == 0 || k * std::pow(static_cast<double>(j), gamma) <= n * (1.0 + 1e-12)) ++count;
    }
  }
  return count;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidationReport validate_suite(const ValidationOptions& options) {
  Suite suite;
  ValidationReport report;
  std::mt19937_64 rng(options.seed);

  // basis
  suite.run("gram_identity_deg24", "basis", Compare::AtMost, 1e-12, [] {
    const int deg = 24;
    const auto rule = gauss_chebyshev_rule(deg + 1);
    std::vector<double> vals(static_cast<std::size_t>(deg + 1) * rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
      eval_orthonormal_all(rule.nodes[i], std::span<double>(vals.data() + i * (deg + 1), deg + 1));
    }
    double worst = 0.0;
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; b <= deg; ++b) {
        double g = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
          g += rule.weights[i] * vals[i * (deg + 1) + a] * vals[i * (deg + 1) + b];
        }
        worst = std::max(worst, std::abs(g - (a == b ? 1.0 : 0.0)));
      }
    }
    return Measured{worst, "max |G - I| over T_0..T_24, 25-node rule"};
  });

  // transform
  suite.run("parseval_random_grids", "transform", Compare::AtMost, 1e-10, [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto c = random_grid(rng, 10, 10);
      const auto rule = gauss_chebyshev_rule(21);
      const auto vals = grid_synthesize(c, rule.nodes, rule.nodes);
      double acc = 0.0;
      for (double v : vals.data) acc += v * v;
      const double quad = std::sqrt(acc) * rule.weights.front();
      const double coef = l2_omega_norm(c);
      worst = std::max(worst, std::abs(quad - coef) / coef);
    }
    return Measured{worst, "relative gap, coefficient vs quadrature L2 norm, 20 grids"};
  });

  suite.run("analyze_synthesize_roundtrip", "transform", Compare::AtMost, 1e-12, [&] {
    const auto c = random_grid(rng, 8, 6);
    const auto back = analyze([&](double t, double tau) { return synthesize(c, t, tau); }, 8, 6);
    double worst = 0.0;
    for (int k = 0; k <= 8; ++k) {
      for (int j = 0; j <= 6; ++j) worst = std::max(worst, std::abs(back.at(k, j) - c.at(k, j)));
    }
    return Measured{worst, "max coefficient change"};
  });

  // hypercross
  suite.run("cardinality_spot_values", "hypercross", Compare::Equal, 0.0, [] {
    const double miss = std::abs(static_cast<double>(cardinality(4, 1.0, 1)) - 12.0) +
                        std::abs(static_cast<double>(cardinality(4, 2.0, 1)) - 9.0) +
                        std::abs(static_cast<double>(cardinality(3, 1.5, 3)) - 2.0);
    return Measured{miss, "|card(4,1,1)-12| + |card(4,2,1)-9| + |card(3,1.5,3)-2|"};
  });

  suite.run("cardinality_matches_enumeration", "hypercross", Compare::Equal, 0.0, [] {
    double mismatches = 0;
    for (int n = 1; n <= 40; ++n) {
      for (double g : {1.0, 1.5, 2.0, 3.0}) {
        for (int r = 1; r <= std::min(n, 3); ++r) {
          if (cardinality(n, g, r) != brute_cardinality(n, g, r)) ++mismatches;
        }
      }
    }
    return Measured{mismatches, "mismatches over n <= 40, gamma in {1,1.5,2,3}, r <= 3"};
  });

  suite.run("cross_monotone", "hypercross", Compare::Equal, 0.0, [] {
    double violations = 0;
    for (int n = 2; n <= 200; ++n) {
      if (cardinality(n, 1.0, 1) < cardinality(n - 1, 1.0, 1)) ++violations;
      if (cardinality(n, 2.0, 1) > cardinality(n, 1.0, 1)) ++violations;
    }
    return Measured{violations, "growth in n, shrinkage in gamma"};
  });

  // diffop: zeta_0 from central differences, which are exact for the
  // linear T_1 and the quadratic T_2.
  {
    const double h = 0.25;
    const std::vector<double> probes{-0.6, -0.25, 0.0, 0.3, 0.7};
    auto fd = [&](int k, double t) { return (eval_orthonormal(k, t + h) - eval_orthonormal(k, t - h)) / (2.0 * h); };
    double z = 0.0;
    for (double t : probes) z += fd(1, t) / (2.0 * eval_orthonormal(0, t));
    report.oracle_zeta0 = z / static_cast<double>(probes.size());

    suite.run("zeta0_oracle", "diffop", Compare::AtMost, 1e-12, [&] {
      return Measured{std::abs(report.oracle_zeta0 - options.zeta0),
                      fmt("finite-difference zeta_0 = %.15g, in use %.15g", report.oracle_zeta0, options.zeta0)};
    });

    auto residual = [&](int k) {
      const DerivativeOperator1D op(k, options.zeta0);
      std::vector<double> in(static_cast<std::size_t>(k) + 1, 0.0), out(static_cast<std::size_t>(k), 0.0);
      in.back() = 1.0;
      op.apply(in, out);
      double worst = 0.0;
      for (double t : probes) {
        double v = 0.0;
        for (int l = 0; l < k; ++l) v += out[static_cast<std::size_t>(l)] * eval_orthonormal(l, t);
        worst = std::max(worst, std::abs(v - fd(k, t)));
      }
      return worst;
    };
    suite.run("derivative_residual_T1", "diffop", Compare::AtMost, 1e-12,
              [&] { return Measured{residual(1), "max |D T_1 - central difference| at 5 probes"}; });
    suite.run("derivative_residual_T2", "diffop", Compare::AtMost, 1e-12,
              [&] { return Measured{residual(2), "max |D T_2 - central difference| at 5 probes"}; });
  }

  suite.run("derivative_fd_random", "diffop", Compare::AtMost, 1e-5, [&] {
    const double h = 1e-5;
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const auto c = random_grid(rng, 8, 4);
      const auto d = differentiate_coeffs(c, 1, options.zeta0);
      double err = 0.0, scale = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double t = u(rng), tau = u(rng);
        const double ref = (synthesize(c, t + h, tau) - synthesize(c, t - h, tau)) / (2.0 * h);
        err = std::max(err, std::abs(synthesize(d, t, tau) - ref));
        scale = std::max(scale, std::abs(ref));
      }
      worst = std::max(worst, err / scale);
    }
    return Measured{worst, "relative sup gap vs central differences, 10 grids, r = 1"};
  });

  suite.run("derivative_matches_monomial", "diffop", Compare::AtMost, 1e-10, [&] {
    const auto c = analyze([](double t, double) { return t * t * t; }, 8, 0, 17);
    const auto d = truncated_derivative(c, 8, 1.0, 1);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double t = -0.95 + 0.2 * i;
      worst = std::max(worst, std::abs(synthesize(d, t, 0.3) - 3.0 * t * t));
    }
    return Measured{worst, "d/dt t^3 at 10 probes"};
  });

  // model
  suite.run("noise_norm_contract", "model", Compare::AtMost, 1e-12, [&] {
    const CrossIndexSet cross(30, 1.5, 1);
    double worst = 0.0;
    for (double p : {1.0, 2.0, 5.0, kInf}) {
      for (auto mode : {NoiseMode::UniformRandom, NoiseMode::AdversarialTopweight, NoiseMode::SingleCoefficient}) {
        NoiseSpec ns{p, 3e-3, mode, 11};
        const auto xi = noise_vector(ns, cross);
        std::vector<double> v;
        xi.for_each_nonzero([&](int, int, double x) { v.push_back(x); });
        worst = std::max(worst, std::abs(sequence_lp_norm(v, p) - ns.delta) / ns.delta);
      }
    }
    return Measured{worst, "relative l_p norm gap, p in {1,2,5,inf}, all modes"};
  });

  suite.run("class_member_unit_norm", "model", Compare::AtMost, 1e-12, [] {
    const WienerSpec w{1.0, 3.0, 2.0};
    const auto c = make_class_member(w, 63, 63, 5);
    return Measured{std::abs(wiener_norm(c, w) - 1.0), "|norm - 1| on a 64 x 64 box"};
  });

  // norms
  suite.run("nikolskii_ratio", "norms", Compare::AtMost, 1.0, [&] {
    std::uniform_int_distribution<int> deg(0, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = deg(rng), m = deg(rng);
      const auto c = random_grid(rng, n, m);
      const double ratio = sup_norm(c, 65) / (nikolskii_explicit_bound(n, m) * l2_omega_norm(c));
      worst = std::max(worst, ratio);
    }
    return Measured{worst, "max sup / (bound * L2) over 100 random polynomials"};
  });

  suite.run("lq_q2_equals_l2", "norms", Compare::AtMost, 1e-12, [&] {
    const auto c = random_grid(rng, 9, 7);
    return Measured{std::abs(lq_omega_norm(c, 2.0) - l2_omega_norm(c)) / l2_omega_norm(c), "relative gap"};
  });

  // tuning
  suite.run("rate_positive_when_admissible", "tuning", Compare::Equal, 0.0, [&] {
    std::uniform_real_distribution<double> mu(0.1, 8.0);
    double bad = 0;
    for (int i = 0; i < 500; ++i) {
      ProblemSpec p;
      p.r = 1 + i % 3;
      p.wiener = {1.0 + (i % 4), mu(rng), mu(rng)};
      p.noise_p = (i % 5 == 0) ? kInf : 1.0 + (i % 7);
      p.metric = (i % 3 == 0) ? MetricSpec::l2() : (i % 3 == 1) ? MetricSpec::uniform() : MetricSpec::lq(4.0);
      if (!validate_spec(p) && !(theoretical_rate(p) > 0.0)) ++bad;
    }
    return Measured{bad, "admissible specs with nonpositive rate among 500 samples"};
  });

  suite.run("lq_q2_matches_l2_formulas", "tuning", Compare::AtMost, 1e-15, [] {
    ProblemSpec a;
    a.wiener = {2.0, 3.0, 4.0};
    ProblemSpec b = a;
    b.metric = MetricSpec::lq(2.0);
    const double gap = std::abs(theoretical_rate(a) - theoretical_rate(b)) +
                       std::abs(gamma_range(a).upper - gamma_range(b).upper);
    return Measured{gap, "rate and gamma_max differences at q = 2"};
  });

  suite.run("choose_n_monotone", "tuning", Compare::Equal, 0.0, [] {
    ProblemSpec p;
    p.wiener = {1.0, 3.0, 2.0};
    double violations = 0;
    int prev = 0;
    for (int i = 1; i <= 60; ++i) {
      const int n = choose_n(std::pow(10.0, -0.1 * i), p);
      if (n < prev) ++violations;
      prev = n;
    }
    return Measured{violations, "decreases of n as delta shrinks"};
  });

  // harness
  suite.run("fit_recovers_planted_slope", "harness", Compare::AtMost, 1e-9, [] {
    std::vector<std::pair<double, double>> pts;
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) pts.emplace_back(d, 3.0 * std::pow(d, 0.5));
    return Measured{std::abs(fit_rate(pts).slope - 0.5), "|slope - 0.5| on an exact power law"};
  });

  report.checks = std::move(suite.checks);
  return report;
}

void write_validation_text(std::ostream& out, const ValidationReport& report) {
  for (const auto& c : report.checks) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "measured=%.6g threshold=%.6g", c.measured, c.threshold);
    out << (c.passed ? "PASS " : "FAIL ") << c.module << '/' << c.name << ' ' << buf;
    if (!c.detail.empty()) out << " (" << c.detail << ')';
    out << '\n';
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", report.oracle_zeta0);
  out << "oracle zeta_0 = " << buf << '\n';
  out << (report.all_passed() ? "all checks passed" : "some checks FAILED") << '\n';
}

void write_validation_json(std::ostream& out, const ValidationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"module", c.module},
                      {"passed", c.passed},
                      {"measured", std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr)},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
  }
  nlohmann::json doc{{"oracle_zeta0", report.oracle_zeta0}, {"all_passed", report.all_passed()}, {"checks", checks}};
  out << doc.dump(2) << '\n';
}

}  // namespace chebdiff

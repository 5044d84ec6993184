#include "chebdiff/tuning.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "chebdiff/hypercross.hpp"

namespace chebdiff {

namespace {

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::optional<SpecViolation> require_greater(const char* inequality, const char* lhs_name, double lhs, double rhs) {
  if (lhs > rhs) return std::nullopt;
  return SpecViolation{inequality, std::string(inequality) + " violated: " + lhs_name + " = " + fmt(lhs) +
                                       ", needs > " + fmt(rhs)};
}

std::optional<SpecViolation> structural(const ProblemSpec& spec) {
  auto fail = [](const char* what, const std::string& msg) { return SpecViolation{what, msg}; };
  if (spec.r < 1) return fail("r ≥ 1", "derivative order r must be at least 1");
  if (!(spec.wiener.s >= 1.0) || !std::isfinite(spec.wiener.s)) return fail("1 ≤ s < ∞", "s must satisfy 1 <= s < inf");
  if (!(spec.wiener.mu1 > 0.0)) return fail("μ₁ > 0", "mu1 must be positive");
  if (!(spec.wiener.mu2 > 0.0)) return fail("μ₂ > 0", "mu2 must be positive");
  if (!(spec.noise_p >= 1.0)) return fail("1 ≤ p ≤ ∞", "noise exponent p must be >= 1");
  if (!(spec.level_constant > 0.0) || !std::isfinite(spec.level_constant)) {
    return fail("level_constant > 0", "level constant must be positive and finite");
  }
  if (spec.metric.kind == MetricKind::LqWeighted && !(spec.metric.q >= 2.0 && std::isfinite(spec.metric.q))) {
    return fail("2 ≤ q < ∞", "weighted L_q metric needs 2 <= q < inf");
  }
  if (spec.metric.eval_grid != 0 && spec.metric.eval_grid < 2) return fail("M ≥ 2", "metric eval grid needs M >= 2");
  return std::nullopt;
}

// Shift c in the numerator/denominator pattern (mu + 1/s + c) shared by the
// three metrics: -1/2 for L2, -1 for C, 1/q - 1 for L_q.
double metric_shift(const MetricSpec& metric) {
  switch (metric.kind) {
    case MetricKind::L2Weighted:
      return -0.5;
    case MetricKind::Uniform:
      return -1.0;
    case MetricKind::LqWeighted:
      return 1.0 / metric.q - 1.0;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::optional<SpecViolation> validate_spec(const ProblemSpec& spec) {
  if (auto v = structural(spec)) return v;
  const double r = spec.r;
  const double is = 1.0 / spec.wiener.s;
  const double mu1 = spec.wiener.mu1;
  const double mu2 = spec.wiener.mu2;
  switch (spec.metric.kind) {
    case MetricKind::L2Weighted:
      if (auto v = require_greater("μ₁ > 2r−1/s+1/2", "μ₁", mu1, 2 * r - is + 0.5)) return v;
      if (auto v = require_greater("μ₂ > μ₁−2r", "μ₂", mu2, mu1 - 2 * r)) return v;
      if (auto v = require_greater("μ₂ > 1/2−1/s", "μ₂", mu2, 0.5 - is)) return v;
      break;
    case MetricKind::Uniform:
      if (auto v = require_greater("μ₁ > 2r−1/s+1", "μ₁", mu1, 2 * r - is + 1.0)) return v;
      if (auto v = require_greater("μ₂ > μ₁−2r", "μ₂", mu2, mu1 - 2 * r)) return v;
      if (auto v = require_greater("μ₂ > 1−1/s", "μ₂", mu2, 1.0 - is)) return v;
      break;
    case MetricKind::LqWeighted: {
      const double iq = 1.0 / spec.metric.q;
      if (auto v = require_greater("μ₁ > 2r−1/s−1/q+1", "μ₁", mu1, 2 * r - is - iq + 1.0)) return v;
      if (auto v = require_greater("μ₂ > 1−1/s−1/q", "μ₂", mu2, 1.0 - is - iq)) return v;
      break;
    }
  }
  return std::nullopt;
}

int choose_n(double delta, const ProblemSpec& spec) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("choose_n: delta must lie in (0, 1)");
  const double denom = spec.wiener.mu1 - inv(spec.noise_p) + 1.0 / spec.wiener.s;
  if (!(denom > 0.0)) throw std::invalid_argument("choose_n: mu1 - 1/p + 1/s must be positive");
  const double level = std::round(spec.level_constant * std::pow(delta, -1.0 / denom));
  if (!(level < static_cast<double>(std::numeric_limits<int>::max() / 4))) {
    throw std::invalid_argument("choose_n: truncation level overflows");
  }
  return std::max(spec.r, static_cast<int>(level));
}

GammaRange gamma_range(const ProblemSpec& spec) {
  const double c = metric_shift(spec.metric);
  const double is = 1.0 / spec.wiener.s;
  const double num = spec.wiener.mu2 + is + c;
  const double den = spec.wiener.mu1 - 2.0 * spec.r + is + c;
  if (!(den > 0.0)) return GammaRange{1.0, 1.0};
  return GammaRange{1.0, num / den};
}

double theoretical_rate(const ProblemSpec& spec) {
  const double c = metric_shift(spec.metric);
  const double is = 1.0 / spec.wiener.s;
  return (spec.wiener.mu1 - 2.0 * spec.r + is + c) / (spec.wiener.mu1 - inv(spec.noise_p) + is);
}

std::size_t expected_cardinality(double delta, const ProblemSpec& spec, double gamma) {
  const auto range = gamma_range(spec);
  if (!range.admits(gamma)) throw std::invalid_argument("expected_cardinality: gamma outside the admissible range");
  return cardinality(choose_n(delta, spec), gamma, spec.r);
}

}  // namespace chebdiff

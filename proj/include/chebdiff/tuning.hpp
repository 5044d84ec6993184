#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "chebdiff/model.hpp"
#include "chebdiff/norms.hpp"

namespace chebdiff {

/// Everything the a priori parameter choice depends on.
struct ProblemSpec {
  int r = 1;
  WienerSpec wiener;
  double noise_p = 2.0;  // [1, inf]
  MetricSpec metric;
  double level_constant = 1.0;  // implied constant in n ~ delta^{-1/(mu1 - 1/p + 1/s)}
};

/// A violated hypothesis. `inequality` is the condition as written, e.g.
/// "μ₁ > 2r−1/s+1/2"; `message` adds the numbers.
struct SpecViolation {
  std::string inequality;
  std::string message;
};

/// Structural checks first (r >= 1, s >= 1, mu > 0, p >= 1, metric,
/// level constant), then the smoothness hypotheses for the metric:
///
///   l2w    mu1 > 2r - 1/s + 1/2,      mu2 > mu1 - 2r,  mu2 > 1/2 - 1/s
///   sup    mu1 > 2r - 1/s + 1,        mu2 > mu1 - 2r,  mu2 > 1 - 1/s
///   lqw:q  mu1 > 2r - 1/s - 1/q + 1,  mu2 > 1 - 1/s - 1/q
///
/// The last condition in the l2w and sup rows is used inside the
/// truncation-error bounds but is not folded into the headline hypotheses.
std::optional<SpecViolation> validate_spec(const ProblemSpec& spec);

/// n = max(r, round(level_constant * delta^{-1/(mu1 - 1/p + 1/s)})).
/// Throws std::invalid_argument unless 0 < delta < 1.
int choose_n(double delta, const ProblemSpec& spec);

/// Admissible gamma: lower <= gamma < upper. Empty when upper <= 1.
struct GammaRange {
  double lower = 1.0;
  double upper = 1.0;

  bool empty() const noexcept { return !(upper > lower); }
  bool admits(double gamma) const noexcept { return gamma >= lower && gamma < upper; }
};

GammaRange gamma_range(const ProblemSpec& spec);

/// Exponent e in the accuracy bound O(delta^e) for the problem's metric.
double theoretical_rate(const ProblemSpec& spec);

/// cardinality(choose_n(delta, spec), gamma, r): the number of perturbed
/// coefficients the method reads.
std::size_t expected_cardinality(double delta, const ProblemSpec& spec, double gamma);

}  // namespace chebdiff

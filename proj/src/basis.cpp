#include "chebdiff/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chebdiff {

namespace {

const double kScaleZero = 1.0 / std::sqrt(kPi);
const double kScaleOne = std::sqrt(2.0 / kPi);

}  // namespace

double checked_coordinate(double t) {
  if (std::isnan(t)) throw std::domain_error("coordinate is NaN");
  if (t > 1.0) {
    if (t - 1.0 > kDomainSlack) throw std::domain_error("coordinate " + std::to_string(t) + " outside [-1,1]");
    return 1.0;
  }
  if (t < -1.0) {
    if (-1.0 - t > kDomainSlack) throw std::domain_error("coordinate " + std::to_string(t) + " outside [-1,1]");
    return -1.0;
  }
  return t;
}

double eval_orthonormal(int k, double t) {
  if (k < 0) throw std::invalid_argument("negative Chebyshev degree");
  const double x = checked_coordinate(t);
  if (k == 0) return kScaleZero;
  return kScaleOne * std::cos(k * std::acos(x));
}

double orthonormal_peak(int k) noexcept { return k == 0 ? kScaleZero : kScaleOne; }

void eval_orthonormal_all(double t, std::span<double> out) {
  if (out.empty()) return;
  const double theta = std::acos(checked_coordinate(t));
  out[0] = kScaleZero;
  for (std::size_t k = 1; k < out.size(); ++k) {
    out[k] = kScaleOne * std::cos(static_cast<double>(k) * theta);
  }
}

double eval_tensor(int k, int j, double t, double tau) {
  return eval_orthonormal(k, t) * eval_orthonormal(j, tau);
}

QuadratureRule gauss_chebyshev_rule(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Chebyshev rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.assign(static_cast<std::size_t>(n), kPi / n);
  for (int i = 1; i <= n; ++i) {
    rule.nodes[static_cast<std::size_t>(i - 1)] = std::cos((2.0 * i - 1.0) * kPi / (2.0 * n));
  }
  // cos((2i-1)pi/(2N)) at the midpoint of an odd rule is ~6e-17, not 0.
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

std::vector<double> lobatto_points(int m) {
  if (m < 2) throw std::invalid_argument("cosine grid needs at least two points");
  std::vector<double> pts(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pts[static_cast<std::size_t>(i)] = std::cos(i * kPi / (m - 1));
  pts.front() = 1.0;
  pts.back() = -1.0;
  if ((m - 1) % 2 == 0) pts[static_cast<std::size_t>((m - 1) / 2)] = 0.0;
  return pts;
}

}  // namespace chebdiff

#include "chebdiff/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include "chebdiff/basis.hpp"
#include "chebdiff/hypercross.hpp"

namespace chebdiff {

void MetricSpec::validate() const {
  if (kind == MetricKind::LqWeighted && !(q >= 2.0 && std::isfinite(q))) {
    throw std::invalid_argument("lqw metric needs 2 <= q < inf");
  }
  if (eval_grid != 0 && eval_grid < 2) throw std::invalid_argument("metric eval grid needs at least 2 points");
}

std::string MetricSpec::label() const {
  switch (kind) {
    case MetricKind::L2Weighted:
      return "l2w";
    case MetricKind::Uniform:
      return "sup";
    case MetricKind::LqWeighted: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "lqw:%g", q);
      return buf;
    }
  }
  return "?";
}

MetricSpec parse_metric(std::string_view text) {
  if (text == "l2w") return MetricSpec::l2();
  if (text == "sup") return MetricSpec::uniform();
  if (text.starts_with("lqw:")) {
    const auto arg = text.substr(4);
    double q = 0.0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), q);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || arg.empty()) {
      throw std::invalid_argument("bad exponent in metric '" + std::string(text) + "'");
    }
    auto m = MetricSpec::lq(q);
    m.validate();
    return m;
  }
  throw std::invalid_argument("unknown metric '" + std::string(text) + "' (expected l2w, lqw:<q> or sup)");
}

double sequence_lp_norm(std::span<const double> values, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("l_p norm needs p >= 1");
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || std::isinf(p)) return scale;
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : values) acc += std::abs(v) / scale;
    return scale * acc;
  }
  if (p == 2.0) {
    for (double v : values) acc += (v / scale) * (v / scale);
    return scale * std::sqrt(acc);
  }
  for (double v : values) acc += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

double l2_omega_norm(const CoeffGrid& coeffs) {
  std::vector<double> values;
  values.reserve(coeffs.nonzero_count());
  coeffs.for_each_nonzero([&](int, int, double v) { values.push_back(v); });
  return sequence_lp_norm(values, 2.0);
}

int default_lq_nodes(const CoeffGrid& coeffs) { return 4 * std::max(coeffs.max_k(), coeffs.max_j()) + 1; }

double lq_from_samples(const Matrix& values, double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("weighted L_q norm needs 1 <= q < inf");
  if (values.rows != values.cols) throw std::invalid_argument("quadrature samples must be square");
  const double scale = max_abs(values);
  if (scale == 0.0) return 0.0;
  const double w = kPi / static_cast<double>(values.rows);
  double acc = 0.0;
  for (double v : values.data) acc += std::pow(std::abs(v) / scale, q);
  return scale * std::pow(acc * w * w, 1.0 / q);
}

double max_abs(const Matrix& values) {
  double m = 0.0;
  for (double v : values.data) m = std::max(m, std::abs(v));
  return m;
}

double lq_omega_norm(const CoeffGrid& coeffs, double q, int quad_n) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::invalid_argument("weighted L_q norm needs 1 <= q < inf");
  if (quad_n == 0) quad_n = default_lq_nodes(coeffs);
  if (quad_n < std::max(coeffs.max_k(), coeffs.max_j()) + 1) {
    throw std::invalid_argument("weighted L_q norm: quad_n below max degree + 1");
  }
  const auto rule = gauss_chebyshev_rule(quad_n);
  return lq_from_samples(grid_synthesize(coeffs, rule.nodes, rule.nodes), q);
}

double sup_norm(const CoeffGrid& coeffs, int m) {
  const auto pts = lobatto_points(m);
  return max_abs(grid_synthesize(coeffs, pts, pts));
}

double lq_coefficient_bound(const CoeffGrid& coeffs, double q) {
  if (!(q >= 2.0) || !std::isfinite(q)) throw std::invalid_argument("coefficient L_q bound needs 2 <= q < inf");
  const double exponent = 1.0 - 2.0 / q;
  std::vector<double> weighted;
  weighted.reserve(coeffs.nonzero_count());
  coeffs.for_each_nonzero([&](int k, int j, double v) {
    const double w = std::pow(static_cast<double>(underline(k)) * underline(j), 0.5 * exponent);
    weighted.push_back(w * v);
  });
  return sequence_lp_norm(weighted, 2.0);
}

double nikolskii_explicit_bound(int max_k, int max_j) {
  if (max_k < 0 || max_j < 0) throw std::invalid_argument("Nikolskii bound: degrees must be nonnegative");
  return 2.0 / kPi * std::sqrt((static_cast<double>(max_k) + 1.0) * (static_cast<double>(max_j) + 1.0));
}

double measure(const CoeffGrid& coeffs, const MetricSpec& metric) {
  metric.validate();
  switch (metric.kind) {
    case MetricKind::L2Weighted:
      return l2_omega_norm(coeffs);
    case MetricKind::LqWeighted:
      return lq_omega_norm(coeffs, metric.q, metric.eval_grid);
    case MetricKind::Uniform:
      return sup_norm(coeffs, metric.eval_grid == 0 ? kDefaultSupGrid : metric.eval_grid);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace chebdiff

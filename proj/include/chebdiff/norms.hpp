#pragma once

#include <span>
#include <string>
#include <string_view>

#include "chebdiff/coeff_grid.hpp"
#include "chebdiff/transform.hpp"

namespace chebdiff {

enum class MetricKind { L2Weighted, LqWeighted, Uniform };

/// Output metric for error measurement. Text form: `l2w`, `lqw:<q>`, `sup`.
struct MetricSpec {
  MetricKind kind = MetricKind::L2Weighted;
  double q = 2.0;     // used by LqWeighted only, q >= 2
  int eval_grid = 0;  // points per dimension; 0 selects the default

  /// Throws std::invalid_argument if q < 2 for LqWeighted or eval_grid is 1
  /// or negative.
  void validate() const;
  std::string label() const;

  static MetricSpec l2() { return {}; }
  static MetricSpec lq(double q) { return {MetricKind::LqWeighted, q, 0}; }
  static MetricSpec uniform(int grid = 0) { return {MetricKind::Uniform, 2.0, grid}; }
};

MetricSpec parse_metric(std::string_view text);

inline constexpr int kDefaultSupGrid = 257;

/// l_p norm of a sequence, p in [1, inf] (inf as +infinity). Scaled by the
/// largest magnitude so that huge or tiny entries neither overflow nor
/// underflow.
double sequence_lp_norm(std::span<const double> values, double p);

/// ||f||_{L2,w} through Parseval: sqrt(sum a_{k,j}^2).
double l2_omega_norm(const CoeffGrid& coeffs);

/// Default quadrature size for weighted L_q: 4 * max(max_k, max_j) + 1.
int default_lq_nodes(const CoeffGrid& coeffs);

/// Weighted L_q norm by tensor Gauss-Chebyshev quadrature applied to |f|^q.
/// Exact for even integer q when quad_n is large enough; otherwise an
/// approximation since |f|^q is not a polynomial. quad_n = 0 selects
/// default_lq_nodes. Throws std::invalid_argument for q < 1.
double lq_omega_norm(const CoeffGrid& coeffs, double q, int quad_n = 0);

/// Max of |f| over the m x m endpoint-including cosine grid. A lower bound
/// for the true sup norm that is exact at the corners.
double sup_norm(const CoeffGrid& coeffs, int m = kDefaultSupGrid);

/// sqrt(sum (max(1,k) max(1,l))^{1 - 2/q} a_{k,l}^2), the coefficient-side
/// upper bound (up to a constant) for the weighted L_q norm, 2 <= q < inf.
double lq_coefficient_bound(const CoeffGrid& coeffs, double q);

/// (2/pi) sqrt((max_k + 1)(max_j + 1)): sup-norm over L2,w-norm ratio bound
/// for polynomials of coordinate degrees (max_k, max_j).
double nikolskii_explicit_bound(int max_k, int max_j);

/// Norm of the function represented by coeffs in the given metric.
double measure(const CoeffGrid& coeffs, const MetricSpec& metric);

/// Weighted L_q norm of sampled values on a tensor Gauss-Chebyshev grid of
/// n x n nodes (weights (pi/n)^2). values.rows == values.cols == n.
double lq_from_samples(const Matrix& values, double q);

/// max |values|.
double max_abs(const Matrix& values);

}  // namespace chebdiff

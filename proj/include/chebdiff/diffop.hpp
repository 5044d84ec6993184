#pragma once

#include <numbers>
#include <span>

#include "chebdiff/coeff_grid.hpp"
#include "chebdiff/hypercross.hpp"

namespace chebdiff {

/// Weight of the T_0 term in the derivative of an orthonormal T_k:
///
///   T_k'(t) = 2k sum_{l < k, k + l odd} zeta_l T_l(t),  zeta_l = 1 (l >= 1).
///
/// With T_0 = 1/sqrt(pi) and T_k = sqrt(2/pi) cos(k arccos t), matching the
/// derivative of T_1 = sqrt(2/pi) t forces zeta_0 = 1/sqrt(2). The value
/// sqrt(2) that is sometimes quoted for this normalization makes every
/// derivative of an odd-degree term wrong in its constant part; the
/// validation suite re-derives the constant by finite differences.
inline constexpr double kZeta0 = std::numbers::sqrt2 / 2.0;

/// One-variable differentiation in the orthonormal Chebyshev basis, for
/// input degrees up to max_k. Conceptually the strictly upper-triangular
/// table d_{l,k} = 2k zeta_l (l < k, k + l odd); application uses running
/// parity sums, so it is O(max_k) per column and the table is never stored.
class DerivativeOperator1D {
 public:
  explicit DerivativeOperator1D(int max_k, double zeta0 = kZeta0);

  int max_k() const noexcept { return max_k_; }
  double zeta0() const noexcept { return zeta0_; }

  /// d_{l,k}; zero unless l < k <= max_k and k + l is odd.
  double entry(int l, int k) const;

  /// out[l] = sum_k d_{l,k} in[k] for l = 0..in.size()-2. Requires
  /// in.size() - 1 <= max_k and out.size() >= in.size() - 1.
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  int max_k_;
  double zeta0_;
};

/// r-th partial derivative in t of the function represented by coeffs, as
/// coefficients. Output bounds are (max(0, max_k - r), max_j).
/// Throws std::invalid_argument for r < 1.
CoeffGrid differentiate_coeffs(const CoeffGrid& coeffs, int r, double zeta0 = kZeta0);

/// The entries of coeffs whose index lies in the cross. Output bounds are
/// those of the cross, (n, cross.max_j()).
CoeffGrid restrict_to(const CoeffGrid& coeffs, const CrossIndexSet& cross);

/// Truncated derivative estimate: the r-th t-derivative of the restriction
/// of coeffs_delta to the hyperbolic cross (n, gamma, r). Entries outside
/// the cross are ignored.
CoeffGrid truncated_derivative(const CoeffGrid& coeffs_delta, int n, double gamma, int r);

}  // namespace chebdiff

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chebdiff/coeff_grid.hpp"

namespace chebdiff {

using BivariateFunction = std::function<double(double t, double tau)>;

/// Dense row-major table of point values; (i, m) <-> (ts[i], taus[m]).
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t m) { return data[i * cols + m]; }
  double operator()(std::size_t i, std::size_t m) const { return data[i * cols + m]; }
};

/// Default quadrature size for analyze: 2 * max(max_k, max_j) + 1.
int default_quadrature_nodes(int max_k, int max_j);

/// Fourier-Chebyshev coefficients <f, T_k T_j> for k <= max_k, j <= max_j,
/// by tensor Gauss-Chebyshev quadrature with quad_n nodes per dimension.
/// quad_n = 0 selects default_quadrature_nodes. Exceptions thrown by f
/// propagate unchanged.
CoeffGrid analyze(const BivariateFunction& f, int max_k, int max_j, int quad_n = 0);

/// Sum of a_{k,j} T_k(t) T_j(tau) over the stored entries, accumulated in
/// ascending (k, j) order with compensated summation.
double synthesize(const CoeffGrid& coeffs, double t, double tau);

/// Batch evaluation on the tensor grid ts x taus. Uses the separable form
/// sum_j (sum_k a_{k,j} T_k(t)) T_j(tau); agrees with synthesize to
/// rounding.
Matrix grid_synthesize(const CoeffGrid& coeffs, std::span<const double> ts, std::span<const double> taus);

}  // namespace chebdiff

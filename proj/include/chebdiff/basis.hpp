#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace chebdiff {

inline constexpr double kPi = std::numbers::pi;

// Inputs with |t| in (1, 1 + kDomainSlack] are clamped to +-1.
inline constexpr double kDomainSlack = 1e-14;

/// N-point Gauss-Chebyshev rule for the weight (1-t^2)^{-1/2} on [-1,1].
/// Nodes are stored in decreasing order, t_i = cos((2i-1)pi/(2N)).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Clamps t to [-1,1] when it lies within kDomainSlack of the interval,
/// throws std::domain_error otherwise.
double checked_coordinate(double t);

/// Orthonormal Chebyshev polynomial of the first kind:
///   T_0(t) = 1/sqrt(pi),  T_k(t) = sqrt(2/pi) cos(k arccos t),  k >= 1.
///
/// Evaluated through the trigonometric form rather than the three-term
/// recurrence. Near |t| = 1 the angle arccos t is ill-conditioned
/// (d/dt arccos t blows up), but cos(k theta) is flat there, so the value
/// stays accurate to a few ulps times k.
double eval_orthonormal(int k, double t);

/// Maximum of |T_k| over [-1,1], attained at t = 1.
double orthonormal_peak(int k) noexcept;

/// Fills out[k] = T_k(t) for k = 0..out.size()-1.
void eval_orthonormal_all(double t, std::span<double> out);

/// T_k(t) * T_j(tau).
double eval_tensor(int k, int j, double t, double tau);

QuadratureRule gauss_chebyshev_rule(int n);

/// Endpoint-including cosine grid cos(i pi / (m-1)), i = 0..m-1 (decreasing).
std::vector<double> lobatto_points(int m);

}  // namespace chebdiff

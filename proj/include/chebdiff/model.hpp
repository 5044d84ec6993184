#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "chebdiff/coeff_grid.hpp"
#include "chebdiff/hypercross.hpp"

namespace chebdiff {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Smoothness of the weighted Wiener class W^{mu}_{s,2}:
///   ||f||_{s,mu}^s = sum max(1,k)^{s mu1} max(1,j)^{s mu2} |a_{k,j}|^s.
struct WienerSpec {
  double s = 1.0;
  double mu1 = 1.0;
  double mu2 = 1.0;

  /// Throws std::invalid_argument unless s >= 1, mu1 > 0, mu2 > 0.
  void validate() const;
};

enum class NoiseMode { UniformRandom, AdversarialTopweight, SingleCoefficient };

std::string to_string(NoiseMode mode);
NoiseMode parse_noise_mode(std::string_view text);

/// Coefficient perturbation xi with ||xi||_{l_p} = delta.
struct NoiseSpec {
  double p = 2.0;  // [1, inf]; kInf for the sup norm
  double delta = 0.0;
  NoiseMode mode = NoiseMode::UniformRandom;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless p >= 1 and 0 <= delta < 1.
  void validate() const;
};

/// Default decay margin for generated class members.
inline constexpr double kDefaultDecayMargin = 0.01;

double wiener_norm(const CoeffGrid& coeffs, const WienerSpec& spec);

/// Counter-based random bits keyed by (seed, k, j, stream). Independent of
/// evaluation order, so grids fill identically in any traversal.
std::uint64_t keyed_bits(std::uint64_t seed, int k, int j, std::uint64_t stream) noexcept;

/// Uniform in [-1, 1) from keyed_bits.
double keyed_uniform(std::uint64_t seed, int k, int j, std::uint64_t stream) noexcept;

/// Member of the unit ball of W^{mu}_{s,2} on the box [0,max_k] x [0,max_j]:
///   a_{k,j} = sigma_{k,j} max(1,k)^{-mu1-margin} max(1,j)^{-mu2-margin},
/// random signs sigma keyed by seed, rescaled to wiener_norm == 1.
CoeffGrid make_class_member(const WienerSpec& spec, int max_k, int max_j, std::uint64_t seed,
                            double margin = kDefaultDecayMargin);

/// The perturbation xi alone, supported on `support`, ||xi||_p == delta.
///
///   uniform-random        i.i.d. uniform values rescaled to norm delta
///   adversarial-topweight all-positive xi aligned with the noise
///                         amplification k^{2r-1} of the r-th derivative:
///                         the Holder-extremal profile (k^{2r-1})^{1/(p-1)};
///                         a spike at the largest k for p = 1 and the
///                         constant delta for p = inf
///   single-coefficient    all mass on the first index (in enumeration
///                         order) maximizing k^{2r-1}
CoeffGrid noise_vector(const NoiseSpec& noise, const CrossIndexSet& support);

/// coeffs + noise_vector(noise, support). delta == 0 returns coeffs.
CoeffGrid perturb(const CoeffGrid& coeffs, const NoiseSpec& noise, const CrossIndexSet& support);

}  // namespace chebdiff

#include "chebdiff/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "chebdiff/norms.hpp"

namespace chebdiff {

namespace {

// Streams separate the sign draws of class members from noise draws.
constexpr std::uint64_t kSignStream = 0x5349474eULL;
constexpr std::uint64_t kNoiseStream = 0x4e4f4953ULL;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void WienerSpec::validate() const {
  if (!(s >= 1.0) || !std::isfinite(s)) throw std::invalid_argument("Wiener class needs 1 <= s < inf");
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) throw std::invalid_argument("Wiener class needs mu1 > 0 and mu2 > 0");
}

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::UniformRandom:
      return "uniform-random";
    case NoiseMode::AdversarialTopweight:
      return "adversarial-topweight";
    case NoiseMode::SingleCoefficient:
      return "single-coefficient";
  }
  return "?";
}

NoiseMode parse_noise_mode(std::string_view text) {
  if (text == "uniform-random") return NoiseMode::UniformRandom;
  if (text == "adversarial-topweight") return NoiseMode::AdversarialTopweight;
  if (text == "single-coefficient") return NoiseMode::SingleCoefficient;
  throw std::invalid_argument("unknown noise mode '" + std::string(text) + "'");
}

void NoiseSpec::validate() const {
  if (!(p >= 1.0)) throw std::invalid_argument("noise needs p >= 1");
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("noise level delta must lie in [0, 1)");
}

double wiener_norm(const CoeffGrid& coeffs, const WienerSpec& spec) {
  spec.validate();
  std::vector<double> weighted;
  weighted.reserve(coeffs.nonzero_count());
  coeffs.for_each_nonzero([&](int k, int j, double v) {
    const double log_weight = spec.mu1 * std::log(static_cast<double>(underline(k))) +
                              spec.mu2 * std::log(static_cast<double>(underline(j)));
    weighted.push_back(std::exp(log_weight) * std::abs(v));
  });
  return sequence_lp_norm(weighted, spec.s);
}

std::uint64_t keyed_bits(std::uint64_t seed, int k, int j, std::uint64_t stream) noexcept {
  std::uint64_t h = splitmix64(seed ^ splitmix64(stream));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(k)));
  return splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) << 32));
}

double keyed_uniform(std::uint64_t seed, int k, int j, std::uint64_t stream) noexcept {
  const double unit = static_cast<double>(keyed_bits(seed, k, j, stream) >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

CoeffGrid make_class_member(const WienerSpec& spec, int max_k, int max_j, std::uint64_t seed, double margin) {
  spec.validate();
  if (max_k < 0 || max_j < 0) throw std::invalid_argument("class member: degree bounds must be nonnegative");
  if (!(margin >= 0.0)) throw std::invalid_argument("class member: decay margin must be nonnegative");
  const std::size_t kw = static_cast<std::size_t>(max_k) + 1;
  const std::size_t jw = static_cast<std::size_t>(max_j) + 1;
  std::vector<double> row(kw);
  std::vector<double> col(jw);
  for (std::size_t k = 0; k < kw; ++k) row[k] = std::pow(static_cast<double>(underline(static_cast<int>(k))), -spec.mu1 - margin);
  for (std::size_t j = 0; j < jw; ++j) col[j] = std::pow(static_cast<double>(underline(static_cast<int>(j))), -spec.mu2 - margin);

  std::vector<double> values(kw * jw);
  for (std::size_t k = 0; k < kw; ++k) {
    for (std::size_t j = 0; j < jw; ++j) {
      const bool negative = (keyed_bits(seed, static_cast<int>(k), static_cast<int>(j), kSignStream) & 1U) != 0;
      values[k * jw + j] = (negative ? -1.0 : 1.0) * row[k] * col[j];
    }
  }
  const double norm = wiener_norm(CoeffGrid::from_dense(max_k, max_j, values), spec);
  for (double& v : values) v /= norm;
  return CoeffGrid::from_dense(max_k, max_j, std::move(values));
}

CoeffGrid noise_vector(const NoiseSpec& noise, const CrossIndexSet& support) {
  noise.validate();
  const int max_k = support.n();
  const int max_j = support.max_j();
  if (noise.delta == 0.0) return CoeffGrid(max_k, max_j, {});
  const auto indices = support.materialize();
  if (indices.empty()) throw std::invalid_argument("perturb: empty support with positive delta");

  const double amp_exponent = 2.0 * support.r() - 1.0;
  std::vector<double> xi(indices.size(), 0.0);

  auto spike_at_top = [&] {
    // Amplification k^{2r-1} grows with k, so the first index of the last
    // row k = n wins; that is (n, 0).
    std::size_t best = 0;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i].k > indices[best].k) best = i;
    }
    xi[best] = noise.delta;
  };

  switch (noise.mode) {
    case NoiseMode::UniformRandom:
      for (std::size_t i = 0; i < indices.size(); ++i) {
        xi[i] = keyed_uniform(noise.seed, indices[i].k, indices[i].j, kNoiseStream);
      }
      break;
    case NoiseMode::AdversarialTopweight:
      if (noise.p == 1.0) {
        spike_at_top();
      } else if (std::isinf(noise.p)) {
        std::fill(xi.begin(), xi.end(), noise.delta);
      } else {
        const double power = amp_exponent / (noise.p - 1.0);
        for (std::size_t i = 0; i < indices.size(); ++i) xi[i] = std::pow(static_cast<double>(indices[i].k), power);
      }
      break;
    case NoiseMode::SingleCoefficient:
      spike_at_top();
      break;
  }

  const double norm = sequence_lp_norm(xi, noise.p);
  if (norm == 0.0) throw std::runtime_error("perturb: degenerate noise draw");
  if (norm != noise.delta) {
    const double scale = noise.delta / norm;
    for (double& v : xi) v *= scale;
  }
  std::vector<CoeffEntry> entries;
  entries.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) entries.push_back({indices[i].k, indices[i].j, xi[i]});
  return CoeffGrid(max_k, max_j, std::move(entries));
}

CoeffGrid perturb(const CoeffGrid& coeffs, const NoiseSpec& noise, const CrossIndexSet& support) {
  if (noise.delta == 0.0) {
    noise.validate();
    return coeffs;
  }
  return coeffs + noise_vector(noise, support);
}

}  // namespace chebdiff

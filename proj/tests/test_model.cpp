#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chebdiff/experiment.hpp"
#include "chebdiff/model.hpp"
#include "chebdiff/norms.hpp"

using namespace chebdiff;

namespace {

double lp_of_difference(const CoeffGrid& a, const CoeffGrid& b, double p) {
  std::vector<double> v;
  (a - b).for_each_nonzero([&](int, int, double x) { v.push_back(x); });
  return sequence_lp_norm(v, p);
}

// Unnormalized profile max(1,k)^{-mu1-eps} max(1,j)^{-mu2-eps}.
CoeffGrid raw_profile(const WienerSpec& w, int box, double eps) {
  std::vector<double> v(static_cast<std::size_t>((box + 1) * (box + 1)));
  for (int k = 0; k <= box; ++k) {
    for (int j = 0; j <= box; ++j) {
      v[static_cast<std::size_t>(k * (box + 1) + j)] =
          std::pow(std::max(1, k), -w.mu1 - eps) * std::pow(std::max(1, j), -w.mu2 - eps);
    }
  }
  return CoeffGrid::from_dense(box, box, std::move(v));
}

}  // namespace

TEST(WienerNorm, SpotValues) {
  EXPECT_DOUBLE_EQ(wiener_norm(CoeffGrid(0, 0, {{0, 0, 1.0}}), {1.0, 5.0, 7.0}), 1.0);
  EXPECT_NEAR(wiener_norm(CoeffGrid(2, 3, {{2, 3, 0.5}}), {1.0, 1.0, 2.0}), 9.0, 1e-14);
  EXPECT_NEAR(wiener_norm(CoeffGrid(1, 1, {{1, 0, 3.0}, {0, 1, 4.0}}), {2.0, 1.0, 1.0}), 5.0, 1e-14);
}

TEST(WienerNorm, HomogeneousAndMonotone) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(121);
  for (auto& x : v) x = u(rng);
  const auto c = CoeffGrid::from_dense(10, 10, v);
  const WienerSpec w{1.5, 2.0, 1.0};
  EXPECT_NEAR(wiener_norm(-3.0 * c, w), 3.0 * wiener_norm(c, w), 1e-12 * wiener_norm(c, w));
  EXPECT_LE(wiener_norm(c, w), wiener_norm(c, {1.5, 2.5, 1.0}));
  EXPECT_LE(wiener_norm(c, w), wiener_norm(c, {1.5, 2.0, 1.3}));
  EXPECT_THROW(wiener_norm(c, {0.5, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(wiener_norm(c, {1.0, 0.0, 1.0}), std::invalid_argument);
}

TEST(ClassMember, UnitNormAndDeterminism) {
  const WienerSpec w{1.0, 3.0, 2.0};
  const auto a = make_class_member(w, 80, 40, 3);
  EXPECT_NEAR(wiener_norm(a, w), 1.0, 1e-12);
  EXPECT_EQ(a, make_class_member(w, 80, 40, 3));
  EXPECT_FALSE(a == make_class_member(w, 80, 40, 4));
  EXPECT_EQ(a.nonzero_count(), 81u * 41u);
  const WienerSpec w2{2.0, 1.5, 2.5};
  EXPECT_NEAR(wiener_norm(make_class_member(w2, 30, 30, 9, 0.2), w2), 1.0, 1e-12);
}

TEST(ClassMember, ProfileAndSigns) {
  const WienerSpec w{1.0, 3.0, 3.0};
  const auto a = make_class_member(w, 64, 64, 1);
  const double base = std::abs(a.at(1, 1));
  EXPECT_NEAR(std::abs(a.at(4, 1)) / base, std::pow(4.0, -3.01), 1e-12);
  EXPECT_NEAR(std::abs(a.at(0, 7)) / base, std::pow(7.0, -3.01), 1e-12);
  int negative = 0;
  a.for_each_nonzero([&](int, int, double v) { negative += v < 0.0; });
  EXPECT_GT(negative, 1800);
  EXPECT_LT(negative, 2400);
}

TEST(ClassMember, BoxProjectionTailDecay) {
  const WienerSpec w{1.0, 3.0, 3.0};
  const auto a = make_class_member(w, 64, 64, 2);
  std::vector<std::pair<double, double>> pts;
  for (int n : {8, 12, 16, 24, 32}) {
    double tail = 0.0;
    a.for_each_nonzero([&](int k, int j, double v) {
      if (k > n || j > n) tail += v * v;
    });
    pts.emplace_back(1.0 / n, std::sqrt(tail));
  }
  // error ~ n^{-slope} with slope = mu1 + eps - 1/2
  EXPECT_NEAR(fit_rate(pts).slope, 3.01 - 0.5, 0.1);
}

TEST(ClassMember, TailConvergesWhenMarginExceedsOneOverS) {
  const WienerSpec w{1.0, 3.0, 2.0};
  const double eps = 2.5;
  const double n64 = wiener_norm(raw_profile(w, 64, eps), w);
  const double n128 = wiener_norm(raw_profile(w, 128, eps), w);
  EXPECT_LT(std::abs(n128 - n64) / n64, 0.01);
}

TEST(ClassMember, TailDivergesAtDefaultMargin) {
  // The weighted sum reduces to sum max(1,k)^{-s eps} max(1,j)^{-s eps},
  // which grows with the box when s eps <= 1.
  const WienerSpec w{1.0, 3.0, 2.0};
  const double n64 = wiener_norm(raw_profile(w, 64, kDefaultDecayMargin), w);
  const double n128 = wiener_norm(raw_profile(w, 128, kDefaultDecayMargin), w);
  EXPECT_GT(n128 / n64, 3.5);
}

TEST(Noise, ZeroDeltaIsIdentity) {
  const CoeffGrid c(5, 5, {{1, 1, 0.5}, {5, 0, -1.0}});
  const CrossIndexSet cross(5, 1.0, 1);
  for (auto mode : {NoiseMode::UniformRandom, NoiseMode::AdversarialTopweight, NoiseMode::SingleCoefficient}) {
    EXPECT_EQ(perturb(c, {2.0, 0.0, mode, 1}, cross), c);
  }
}

TEST(Noise, SupNormUniform) {
  const CoeffGrid c(10, 10, {});
  const CrossIndexSet cross(10, 1.0, 1);
  const auto out = perturb(c, {kInf, 0.01, NoiseMode::UniformRandom, 5}, cross);
  double worst = 0.0;
  out.for_each_nonzero([&](int k, int j, double v) {
    EXPECT_TRUE(cross.contains(k, j));
    worst = std::max(worst, std::abs(v));
  });
  EXPECT_DOUBLE_EQ(worst, 0.01);
}

TEST(Noise, L2OnTwelveIndexCross) {
  const CrossIndexSet cross(4, 1.0, 1);
  ASSERT_EQ(cross.size(), 12u);
  const auto xi = noise_vector({2.0, 0.3, NoiseMode::UniformRandom, 77}, cross);
  double ss = 0.0;
  xi.for_each_nonzero([&](int, int, double v) { ss += v * v; });
  EXPECT_NEAR(std::sqrt(ss), 0.3, 1e-12);
  EXPECT_EQ(xi.nonzero_count(), 12u);
}

TEST(Noise, NormContractAllModes) {
  std::mt19937_64 rng(18);
  std::uniform_int_distribution<int> nd(1, 60);
  std::uniform_real_distribution<double> gd(1.0, 3.0), dd(1e-6, 0.9);
  const NoiseMode modes[] = {NoiseMode::UniformRandom, NoiseMode::AdversarialTopweight, NoiseMode::SingleCoefficient};
  for (int i = 0; i < 100; ++i) {
    const int n = nd(rng);
    const int r = std::uniform_int_distribution<int>(1, std::min(n, 3))(rng);
    const CrossIndexSet cross(n, gd(rng), r);
    const CoeffGrid c(n + 3, 4, {{n + 3, 4, 1.0}, {0, 0, -2.0}});
    for (double p : {1.0, 2.0, 5.0, kInf}) {
      for (auto mode : modes) {
        const NoiseSpec ns{p, dd(rng), mode, static_cast<std::uint64_t>(i)};
        EXPECT_NEAR(lp_of_difference(perturb(c, ns, cross), c, p), ns.delta, 1e-12 * ns.delta)
            << "p=" << p << " mode=" << to_string(mode);
      }
    }
  }
}

TEST(Noise, SingleCoefficientAtLargestAmplification) {
  const CrossIndexSet cross(9, 1.0, 2);
  const auto xi = noise_vector({2.0, 0.1, NoiseMode::SingleCoefficient, 0}, cross);
  ASSERT_EQ(xi.nonzero_count(), 1u);
  EXPECT_DOUBLE_EQ(xi.at(9, 0), 0.1);
}

TEST(Noise, TopweightProfile) {
  const CrossIndexSet cross(16, 1.5, 1);
  const auto xi = noise_vector({2.0, 0.05, NoiseMode::AdversarialTopweight, 0}, cross);
  // l_2 extremal profile for amplification k: xi proportional to k
  EXPECT_NEAR(xi.at(8, 0) / xi.at(2, 0), 4.0, 1e-12);
  EXPECT_NEAR(xi.at(8, 1) / xi.at(8, 0), 1.0, 1e-12);
  xi.for_each_nonzero([](int, int, double v) { EXPECT_GT(v, 0.0); });
  const auto spike = noise_vector({1.0, 0.05, NoiseMode::AdversarialTopweight, 0}, cross);
  EXPECT_EQ(spike.nonzero_count(), 1u);
  EXPECT_DOUBLE_EQ(spike.at(16, 0), 0.05);
}

TEST(Noise, SeedsAreIndependentOfTraversal) {
  EXPECT_EQ(keyed_bits(1, 2, 3, 4), keyed_bits(1, 2, 3, 4));
  EXPECT_NE(keyed_bits(1, 2, 3, 4), keyed_bits(1, 3, 2, 4));
  EXPECT_NE(keyed_bits(1, 2, 3, 4), keyed_bits(2, 2, 3, 4));
  for (int i = 0; i < 1000; ++i) {
    const double u = keyed_uniform(9, i, i * 7, 1);
    EXPECT_GE(u, -1.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Noise, Validation) {
  const CrossIndexSet cross(4, 1.0, 1);
  EXPECT_THROW(noise_vector({2.0, 1.0, NoiseMode::UniformRandom, 0}, cross), std::invalid_argument);
  EXPECT_THROW(noise_vector({2.0, -0.1, NoiseMode::UniformRandom, 0}, cross), std::invalid_argument);
  EXPECT_THROW(noise_vector({0.5, 0.1, NoiseMode::UniformRandom, 0}, cross), std::invalid_argument);
  for (auto mode : {NoiseMode::UniformRandom, NoiseMode::AdversarialTopweight, NoiseMode::SingleCoefficient}) {
    EXPECT_EQ(parse_noise_mode(to_string(mode)), mode);
  }
  EXPECT_THROW(parse_noise_mode("gaussian"), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chebdiff/basis.hpp"
#include "chebdiff/diffop.hpp"
#include "chebdiff/norms.hpp"
#include "chebdiff/transform.hpp"
#include "oracle.hpp"

using namespace chebdiff;

TEST(DerivativeOperator, Entries) {
  const DerivativeOperator1D op(6);
  EXPECT_EQ(op.entry(0, 0), 0.0);
  EXPECT_EQ(op.entry(1, 3), 0.0);  // k + l even
  EXPECT_EQ(op.entry(3, 2), 0.0);  // l > k
  EXPECT_EQ(op.entry(2, 5), 10.0);
  EXPECT_DOUBLE_EQ(op.entry(0, 5), 10.0 / std::sqrt(2.0));
  EXPECT_EQ(op.entry(0, 7), 0.0);  // beyond max_k
}

TEST(DerivativeOperator, ApplyMatchesTable) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int K = 17;
  const DerivativeOperator1D op(K);
  std::vector<double> in(K + 1), out(K);
  for (auto& v : in) v = u(rng);
  op.apply(in, out);
  for (int l = 0; l < K; ++l) {
    double want = 0.0;
    for (int k = 0; k <= K; ++k) want += op.entry(l, k) * in[static_cast<std::size_t>(k)];
    EXPECT_NEAR(out[static_cast<std::size_t>(l)], want, 1e-12 * K * K);
  }
}

TEST(DerivativeOperator, ConstantWeightFromFiniteDifferences) {
  // Central differences are exact for the linear T_1.
  const double h = 0.25;
  const double fd = (eval_orthonormal(1, 0.5) - eval_orthonormal(1, 0.0)) / (2 * h);
  EXPECT_NEAR(fd / (2.0 * eval_orthonormal(0, 0.0)), kZeta0, 1e-15);
  EXPECT_DOUBLE_EQ(kZeta0, 1.0 / std::sqrt(2.0));
}

TEST(Differentiate, Constant) {
  const auto d = differentiate_coeffs(CoeffGrid(0, 0, {{0, 0, 5.0}}), 1);
  EXPECT_TRUE(d.empty());
  EXPECT_EQ(d.max_k(), 0);
}

TEST(Differentiate, LinearTerm) {
  const auto d = differentiate_coeffs(CoeffGrid(1, 0, {{1, 0, 1.0}}), 1);
  for (double t : {-0.9, 0.0, 0.4}) EXPECT_NEAR(synthesize(d, t, 0.2), 0.4501581580785531, 1e-15);
}

TEST(Differentiate, SecondDerivativeOfSingleTerm) {
  const CoeffGrid c(3, 2, {{3, 2, 1.0}});
  const auto d = differentiate_coeffs(c, 2);
  EXPECT_EQ(d.max_k(), 1);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int i = 0; i < 20; ++i) {
    const double t = u(rng), tau = u(rng);
    const double ref = static_cast<double>(oracle::fd_derivative(c, 2, t, tau, 1e-5L));
    EXPECT_NEAR(synthesize(d, t, tau), ref, 1e-6 * std::max(1.0, std::abs(ref)));
  }
}

TEST(Differentiate, MatchesFiniteDifferencesRandom) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + trial % 3;
    const auto c = oracle::random_grid(rng, 4 + trial % 9, trial % 8);
    const auto d = differentiate_coeffs(c, r);
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < 15; ++i) {
      const double t = u(rng), tau = u(rng);
      const long double ref = oracle::fd_derivative(c, r, t, tau, 1e-5L);
      err = std::max(err, std::abs(synthesize(d, t, tau) - static_cast<double>(ref)));
      scale = std::max(scale, std::abs(static_cast<double>(ref)));
    }
    EXPECT_LE(err, 1e-5 * scale) << "trial " << trial << " r=" << r;
  }
}

TEST(Differentiate, RepeatedApplicationComposes) {
  std::mt19937_64 rng(14);
  const auto c = oracle::random_grid(rng, 11, 4);
  const auto twice = differentiate_coeffs(differentiate_coeffs(c, 1), 1);
  const auto direct = differentiate_coeffs(c, 2);
  for (int k = 0; k <= 9; ++k) {
    for (int j = 0; j <= 4; ++j) EXPECT_NEAR(twice.at(k, j), direct.at(k, j), 1e-12);
  }
}

TEST(Differentiate, SparsityPattern) {
  // Output degree l depends only on input degrees k > l with k + l odd.
  const int K = 10;
  for (int k = 0; k <= K; ++k) {
    const auto d = differentiate_coeffs(CoeffGrid(K, 0, {{k, 0, 1.0}}), 1);
    for (int l = 0; l < K; ++l) {
      const bool allowed = l < k && (k + l) % 2 == 1;
      if (!allowed) EXPECT_EQ(d.at(l, 0), 0.0) << k << ' ' << l;
      else EXPECT_NE(d.at(l, 0), 0.0) << k << ' ' << l;
    }
  }
}

TEST(Differentiate, Linearity) {
  std::mt19937_64 rng(15);
  const auto a = oracle::random_grid(rng, 9, 3);
  const auto b = oracle::random_grid(rng, 6, 5);
  const auto lhs = differentiate_coeffs(linear_combination(2.5, a, -1.5, b), 2);
  const auto rhs = linear_combination(2.5, differentiate_coeffs(a, 2), -1.5, differentiate_coeffs(b, 2));
  for (int k = 0; k <= 7; ++k) {
    for (int j = 0; j <= 5; ++j) EXPECT_NEAR(lhs.at(k, j), rhs.at(k, j), 1e-11);
  }
}

TEST(Differentiate, RejectsOrderZero) {
  EXPECT_THROW(differentiate_coeffs(CoeffGrid(2, 2, {{1, 1, 1.0}}), 0), std::invalid_argument);
}

TEST(Truncated, SupportOutsideCross) {
  const CoeffGrid c(20, 20, {{0, 3, 1.0}, {20, 0, 1.0}, {2, 9, 1.0}});
  EXPECT_TRUE(truncated_derivative(c, 8, 1.0, 1).empty());
}

TEST(Truncated, ExactForPolynomialInsideCross) {
  const auto c = analyze([](double t, double tau) { return t * t * t * tau * tau; }, 3, 2, 8);
  const auto d = truncated_derivative(c, 6, 1.0, 1);
  const auto pts = lobatto_points(17);
  for (double t : pts) {
    for (double tau : pts) EXPECT_NEAR(synthesize(d, t, tau), 3.0 * t * t * tau * tau, 1e-10);
  }
}

TEST(Truncated, IdempotentUnderRestriction) {
  std::mt19937_64 rng(16);
  const auto c = oracle::random_grid(rng, 30, 30);
  const CrossIndexSet cross(20, 1.5, 2);
  EXPECT_EQ(truncated_derivative(restrict_to(c, cross), 20, 1.5, 2), truncated_derivative(c, 20, 1.5, 2));
}

TEST(Truncated, RejectsLevelBelowOrder) {
  EXPECT_THROW(truncated_derivative(CoeffGrid(3, 3, {{3, 0, 1.0}}), 2, 1.0, 3), std::invalid_argument);
}

TEST(Truncated, AnalyticDecay) {
  const auto c = analyze([](double t, double tau) { return std::exp(t) * std::cos(tau); }, 40, 40);
  const auto pts = lobatto_points(65);
  double prev = 0.0;
  for (int n : {4, 8, 16}) {
    const auto d = truncated_derivative(c, n, 1.0, 1);
    double err = 0.0;
    const auto vals = grid_synthesize(d, pts, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t m = 0; m < pts.size(); ++m) {
        err = std::max(err, std::abs(vals(i, m) - std::exp(pts[i]) * std::cos(pts[m])));
      }
    }
    if (prev > 0.0) EXPECT_LE(err, prev / 10.0) << "n=" << n;
    prev = err;
  }
}

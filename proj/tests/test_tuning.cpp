#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "chebdiff/hypercross.hpp"
#include "chebdiff/tuning.hpp"

using namespace chebdiff;

namespace {

ProblemSpec make(MetricSpec metric, int r, double s, double mu1, double mu2, double p = 2.0) {
  ProblemSpec spec;
  spec.r = r;
  spec.wiener = {s, mu1, mu2};
  spec.noise_p = p;
  spec.metric = metric;
  return spec;
}

}  // namespace

TEST(ValidateSpec, Examples) {
  EXPECT_FALSE(validate_spec(make(MetricSpec::l2(), 1, 1, 3, 2)).has_value());

  const auto a = validate_spec(make(MetricSpec::l2(), 1, 1, 1.4, 2));
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->inequality, "μ₁ > 2r−1/s+1/2");
  EXPECT_NE(a->message.find("1.5"), std::string::npos);

  const auto b = validate_spec(make(MetricSpec::uniform(), 1, 1, 1.9, 2));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->inequality, "μ₁ > 2r−1/s+1");
  EXPECT_NE(b->message.find("2"), std::string::npos);
}

TEST(ValidateSpec, SecondaryInequalities) {
  EXPECT_EQ(validate_spec(make(MetricSpec::l2(), 1, 1, 5, 2.9))->inequality, "μ₂ > μ₁−2r");
  EXPECT_EQ(validate_spec(make(MetricSpec::uniform(), 1, 1, 3, 0.9))->inequality, "μ₂ > μ₁−2r");
  EXPECT_EQ(validate_spec(make(MetricSpec::lq(4), 1, 1, 1.7, 2))->inequality, "μ₁ > 2r−1/s−1/q+1");
  EXPECT_EQ(validate_spec(make(MetricSpec::lq(4), 1, 4, 3, 0.4))->inequality, "μ₂ > 1−1/s−1/q");
  EXPECT_FALSE(validate_spec(make(MetricSpec::lq(4), 1, 1, 3, 2)).has_value());
  EXPECT_FALSE(validate_spec(make(MetricSpec::uniform(), 1, 1, 3.5, 3)).has_value());
}

TEST(ValidateSpec, LowerBoundOnMu2IsImpliedByTheOthers) {
  // mu1 > 2r - 1/s + c and mu2 > mu1 - 2r give mu2 > c - 1/s, so the extra
  // check never fires first.
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> mu(0.05, 6.0);
  for (int i = 0; i < 5000; ++i) {
    for (auto metric : {MetricSpec::l2(), MetricSpec::uniform()}) {
      const auto v = validate_spec(make(metric, 1 + i % 3, 1.0 + (i % 7) * 0.5, mu(rng), mu(rng)));
      if (v) EXPECT_TRUE(v->inequality != "μ₂ > 1/2−1/s" && v->inequality != "μ₂ > 1−1/s");
    }
  }
}

TEST(ValidateSpec, Structural) {
  EXPECT_TRUE(validate_spec(make(MetricSpec::l2(), 0, 1, 3, 2)).has_value());
  EXPECT_TRUE(validate_spec(make(MetricSpec::l2(), 1, 0.5, 3, 2)).has_value());
  EXPECT_TRUE(validate_spec(make(MetricSpec::l2(), 1, 1, 3, 2, 0.5)).has_value());
  EXPECT_TRUE(validate_spec(make(MetricSpec::lq(1.5), 1, 1, 3, 2)).has_value());
  auto spec = make(MetricSpec::l2(), 1, 1, 3, 2);
  spec.level_constant = 0.0;
  EXPECT_TRUE(validate_spec(spec).has_value());
}

TEST(ChooseN, Examples) {
  const auto spec = make(MetricSpec::l2(), 1, 1, 3, 2);
  EXPECT_EQ(choose_n(1e-3, spec), 7);
  const double ratio = static_cast<double>(choose_n(1e-6, spec)) / choose_n(1e-3, spec);
  EXPECT_NEAR(ratio, std::pow(1000.0, 1.0 / 3.5), 0.5);
  EXPECT_EQ(choose_n(0.5, make(MetricSpec::l2(), 1, 1, 10, 2, INFINITY)), 1);
  EXPECT_EQ(choose_n(0.5, make(MetricSpec::l2(), 3, 1, 10, 2, INFINITY)), 3);
}

TEST(ChooseN, Domain) {
  const auto spec = make(MetricSpec::l2(), 1, 1, 3, 2);
  EXPECT_THROW(choose_n(0.0, spec), std::invalid_argument);
  EXPECT_THROW(choose_n(1.0, spec), std::invalid_argument);
  EXPECT_THROW(choose_n(-0.1, spec), std::invalid_argument);
  EXPECT_THROW(choose_n(1e-300, make(MetricSpec::l2(), 1, 1, 0.6, 2, 1.0)), std::invalid_argument);
}

TEST(ChooseN, Monotone) {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> mu(1.5, 6.0);
  for (int i = 0; i < 200; ++i) {
    const auto spec = make(MetricSpec::l2(), 1, 1.0 + i % 3, mu(rng), 2.0);
    int prev = 0;
    for (double e = -0.5; e >= -8.0; e -= 0.25) {
      const int n = choose_n(std::pow(10.0, e), spec);
      EXPECT_GE(n, prev);
      prev = n;
    }
    auto smoother = spec;
    smoother.wiener.mu1 += 1.0;
    EXPECT_LE(choose_n(1e-5, smoother), choose_n(1e-5, spec));
  }
}

TEST(GammaRange, Examples) {
  EXPECT_DOUBLE_EQ(gamma_range(make(MetricSpec::l2(), 1, 2, 3, 4)).upper, 4.0);
  EXPECT_DOUBLE_EQ(gamma_range(make(MetricSpec::uniform(), 1, 1, 4, 4)).upper, 2.0);
  const auto a = gamma_range(make(MetricSpec::l2(), 2, 1.5, 5.2, 3.1));
  const auto b = gamma_range(make(MetricSpec::lq(2.0), 2, 1.5, 5.2, 3.1));
  EXPECT_DOUBLE_EQ(a.upper, b.upper);
  EXPECT_EQ(a.lower, 1.0);
  EXPECT_TRUE(a.admits(1.0));
  EXPECT_FALSE(a.admits(a.upper));
}

TEST(GammaRange, EmptyWhenDenominatorNonpositive) {
  const auto g = gamma_range(make(MetricSpec::uniform(), 2, 1, 3, 2));
  EXPECT_TRUE(g.empty());
  EXPECT_FALSE(g.admits(1.0));
}

TEST(GammaRange, AboveOneIffSecondInequality) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> mu(0.1, 8.0);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto spec = make(MetricSpec::l2(), 1 + i % 3, 1.0 + (i % 5) * 0.5, mu(rng), mu(rng));
    const double is = 1.0 / spec.wiener.s;
    if (!(spec.wiener.mu1 > 2.0 * spec.r - is + 0.5)) continue;
    ++checked;
    EXPECT_EQ(gamma_range(spec).upper > 1.0, spec.wiener.mu2 > spec.wiener.mu1 - 2.0 * spec.r);
  }
  EXPECT_GT(checked, 200);
}

TEST(TheoreticalRate, Examples) {
  EXPECT_NEAR(theoretical_rate(make(MetricSpec::l2(), 1, 1, 3, 2)), 1.5 / 3.5, 1e-15);
  EXPECT_NEAR(theoretical_rate(make(MetricSpec::uniform(), 1, 1, 3, 2)), 1.0 / 3.5, 1e-15);
  EXPECT_NEAR(theoretical_rate(make(MetricSpec::uniform(), 1, 1, 3.5, 3)), 0.375, 1e-15);
  EXPECT_NEAR(theoretical_rate(make(MetricSpec::lq(4), 1, 1, 3, 2)), 1.25 / 3.5, 1e-15);
  EXPECT_DOUBLE_EQ(theoretical_rate(make(MetricSpec::lq(2), 2, 1.5, 5, 3)),
                   theoretical_rate(make(MetricSpec::l2(), 2, 1.5, 5, 3)));
  EXPECT_NEAR(theoretical_rate(make(MetricSpec::l2(), 1, 1, 3, 2, INFINITY)), 1.5 / 4.0, 1e-15);
}

TEST(TheoreticalRate, PositiveWhenAdmissible) {
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> mu(0.1, 9.0);
  const MetricSpec metrics[] = {MetricSpec::l2(), MetricSpec::uniform(), MetricSpec::lq(3.0), MetricSpec::lq(6.0)};
  for (int i = 0; i < 5000; ++i) {
    const auto spec = make(metrics[i % 4], 1 + i % 3, 1.0 + (i % 4), mu(rng), mu(rng), (i % 5 == 0) ? INFINITY : 1.0 + i % 6);
    if (!validate_spec(spec)) EXPECT_GT(theoretical_rate(spec), 0.0);
  }
}

TEST(ExpectedCardinality, Composition) {
  const auto spec = make(MetricSpec::l2(), 1, 1, 3, 2);
  EXPECT_THROW(expected_cardinality(1e-3, spec, 2.0), std::invalid_argument);  // gamma_max = 2
  auto wide = make(MetricSpec::l2(), 1, 1, 3, 4);
  EXPECT_EQ(expected_cardinality(1e-3, wide, 2.0), cardinality(7, 2.0, 1));
  double lo = 1e9, hi = 0.0;
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double ratio = static_cast<double>(expected_cardinality(d, wide, 2.0)) / choose_n(d, wide);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  EXPECT_LT(hi / lo, 2.0);
  EXPECT_THROW(expected_cardinality(0.0, wide, 1.5), std::invalid_argument);
}

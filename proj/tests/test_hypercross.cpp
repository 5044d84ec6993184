#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "chebdiff/hypercross.hpp"
#include "oracle.hpp"

using namespace chebdiff;

namespace {

std::set<CoeffIndex> brute_set(int n, double gamma, int r) {
  std::set<CoeffIndex> s;
  for (int k = r; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      if (oracle::in_cross(n, gamma, r, k, j)) s.insert({k, j});
    }
  }
  return s;
}

}  // namespace

TEST(Cross, SmallExamples) {
  const auto a = build_cross(4, 1.0, 1).materialize();
  EXPECT_EQ(a.size(), 12u);
  const std::vector<CoeffIndex> b_expected{{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {4, 0}, {4, 1}};
  EXPECT_EQ(build_cross(4, 2.0, 1).materialize(), b_expected);
  const std::vector<CoeffIndex> c_expected{{2, 0}, {2, 1}};
  EXPECT_EQ(build_cross(2, 1.0, 2).materialize(), c_expected);
}

TEST(Cross, Cardinality) {
  EXPECT_EQ(cardinality(4, 1.0, 1), 12u);
  EXPECT_EQ(cardinality(4, 2.0, 1), 9u);
  for (int r = 1; r <= 6; ++r) {
    for (double g : {1.0, 1.3, 2.0, 7.5}) EXPECT_EQ(cardinality(r, g, r), 2u);
  }
}

TEST(Cross, EnumerationMatchesDefinition) {
  for (int n = 1; n <= 60; n += 3) {
    for (double g : {1.0, 1.25, 1.5, 2.0, 2.5, 3.0}) {
      for (int r = 1; r <= std::min(n, 4); ++r) {
        const auto got = build_cross(n, g, r).materialize();
        const auto want = brute_set(n, g, r);
        ASSERT_EQ(got.size(), want.size()) << n << ' ' << g << ' ' << r;
        EXPECT_TRUE(std::equal(got.begin(), got.end(), want.begin()));
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
        EXPECT_EQ(cardinality(n, g, r), want.size());
      }
    }
  }
}

TEST(Cross, MembershipFuzz) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> nd(1, 500);
  std::uniform_real_distribution<double> gd(1.0, 4.0);
  for (int i = 0; i < 10000; ++i) {
    const int n = nd(rng);
    const int r = std::uniform_int_distribution<int>(1, std::min(n, 5))(rng);
    const double g = (i % 3 == 0) ? 1.0 : (i % 3 == 1) ? 2.0 : gd(rng);
    const int k = std::uniform_int_distribution<int>(0, n + 2)(rng);
    const int j = std::uniform_int_distribution<int>(0, 30)(rng);
    const CrossIndexSet set(n, g, r);
    EXPECT_EQ(set.contains(k, j), oracle::in_cross(n, g, r, k, j)) << n << ' ' << g << ' ' << r << ' ' << k << ' ' << j;
  }
}

TEST(Cross, IntegerBoundaryTies) {
  const CrossIndexSet sq(36, 2.0, 1);
  EXPECT_TRUE(sq.contains(4, 3));
  EXPECT_FALSE(sq.contains(5, 3));
  EXPECT_EQ(sq.row_bound(1), 6);
  EXPECT_EQ(sq.row_bound(9), 2);
  EXPECT_EQ(sq.row_bound(37), -1);
  EXPECT_EQ(sq.row_bound(0), -1);
  const CrossIndexSet cube(27, 3.0, 1);
  EXPECT_TRUE(cube.contains(1, 3));
  EXPECT_FALSE(cube.contains(2, 3));
}

TEST(Cross, Monotonicity) {
  for (int n = 2; n <= 80; ++n) {
    const CrossIndexSet small(n - 1, 1.5, 1), big(n, 1.5, 1), narrow(n, 2.5, 1);
    for (const auto& idx : small) EXPECT_TRUE(big.contains(idx.k, idx.j));
    for (const auto& idx : narrow) EXPECT_TRUE(big.contains(idx.k, idx.j));
  }
}

TEST(Cross, MaxJIsEnclosingBound) {
  const CrossIndexSet set(50, 1.5, 2);
  int mj = 0;
  for (const auto& idx : set) mj = std::max(mj, idx.j);
  EXPECT_EQ(set.max_j(), mj);
  EXPECT_EQ(mj, static_cast<int>(std::floor(std::pow(25.0, 1.0 / 1.5))));
}

TEST(Cross, InvalidParameters) {
  EXPECT_THROW(build_cross(2, 1.0, 3), std::invalid_argument);
  EXPECT_THROW(build_cross(4, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(build_cross(4, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(build_cross(4, INFINITY, 1), std::invalid_argument);
}

TEST(Cross, LargeLevelsWithoutMaterializing) {
  EXPECT_EQ(cardinality(1 << 20, 2.0, 1), build_cross(1 << 20, 2.0, 1).size());
  const auto set = build_cross(100000, 1.0, 1);
  std::size_t count = 0;
  for (auto it = set.begin(); it != set.end(); ++it) ++count;
  EXPECT_EQ(count, cardinality(100000, 1.0, 1));
}

#include "chebdiff/hypercross.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chebdiff {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

}  // namespace

CrossIndexSet::CrossIndexSet(int n, double gamma, int r) : n_(n), gamma_(gamma), r_(r) {
  if (r < 1) throw std::invalid_argument("cross: derivative order r must be >= 1");
  if (n < r) {
    throw std::invalid_argument("cross: level n = " + std::to_string(n) + " is below derivative order r = " +
                                std::to_string(r));
  }
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("cross: gamma must be a finite value >= 1");
}

bool CrossIndexSet::admits(int k, int j) const {
  if (j == 0) return true;
  const auto kk = static_cast<std::int64_t>(k);
  const auto jj = static_cast<std::int64_t>(j);
  if (gamma_ == 1.0) return kk * jj <= n_;
  if (gamma_ == 2.0) return jj <= n_ && kk * jj * jj <= n_;
  return static_cast<double>(k) * std::pow(static_cast<double>(j), gamma_) <= n_ * (1.0 + kBoundaryTolerance);
}

int CrossIndexSet::row_bound(int k) const {
  if (k < r_ || k > n_) return -1;
  if (gamma_ == 1.0) return n_ / k;
  int j = static_cast<int>(std::floor(std::pow(static_cast<double>(n_) / k, 1.0 / gamma_)));
  while (admits(k, j + 1)) ++j;
  while (j > 0 && !admits(k, j)) --j;
  return j;
}

bool CrossIndexSet::contains(int k, int j) const {
  if (k < r_ || k > n_ || j < 0) return false;
  return admits(k, j);
}

std::size_t CrossIndexSet::size() const {
  std::size_t count = 0;
  for (int k = r_; k <= n_; ++k) count += static_cast<std::size_t>(row_bound(k)) + 1;
  return count;
}

CrossIndexSet::iterator& CrossIndexSet::iterator::operator++() {
  if (cur_.j < bound_) {
    ++cur_.j;
    return *this;
  }
  ++cur_.k;
  cur_.j = 0;
  if (cur_.k > set_->n_) {
    bound_ = 0;
  } else {
    bound_ = set_->row_bound(cur_.k);
  }
  return *this;
}

CrossIndexSet::iterator CrossIndexSet::begin() const { return iterator(this, CoeffIndex{r_, 0}, row_bound(r_)); }

CrossIndexSet::iterator CrossIndexSet::end() const { return iterator(this, CoeffIndex{n_ + 1, 0}, 0); }

std::vector<CoeffIndex> CrossIndexSet::materialize() const {
  std::vector<CoeffIndex> out;
  out.reserve(size());
  for (const auto& idx : *this) out.push_back(idx);
  return out;
}

CrossIndexSet build_cross(int n, double gamma, int r) { return CrossIndexSet(n, gamma, r); }

std::size_t cardinality(int n, double gamma, int r) { return CrossIndexSet(n, gamma, r).size(); }

}  // namespace chebdiff

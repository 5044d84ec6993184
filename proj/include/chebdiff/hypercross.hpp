#pragma once

#include <cstddef>
#include <iterator>
#include <vector>

#include "chebdiff/coeff_grid.hpp"

namespace chebdiff {

/// Underline convention: max(1, k).
inline constexpr int underline(int k) noexcept { return k < 1 ? 1 : k; }

/// Hyperbolic cross
///   { (k, j) : r <= k <= n, j = 0, or j >= 1 and k * j^gamma <= n }.
///
/// The per-row bound j <= (n/k)^{1/gamma} is floored. Boundary ties are
/// decided in integer arithmetic for gamma = 1 and gamma = 2, and with a
/// 1e-12 relative tolerance for other gamma. j = 0 is admitted for every k.
///
/// The set is never materialized: iteration walks k ascending, then j
/// ascending, computing each row bound on the fly.
class CrossIndexSet {
 public:
  /// Throws std::invalid_argument unless n >= r >= 1 and gamma >= 1.
  CrossIndexSet(int n, double gamma, int r);

  int n() const noexcept { return n_; }
  double gamma() const noexcept { return gamma_; }
  int r() const noexcept { return r_; }

  /// Largest admissible j for row k, or -1 when k is outside [r, n].
  int row_bound(int k) const;

  /// Largest j anywhere in the set (the row k = r).
  int max_j() const { return row_bound(r_); }

  bool contains(int k, int j) const;

  /// Number of indices; O(n) time, no allocation.
  std::size_t size() const;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = CoeffIndex;
    using difference_type = std::ptrdiff_t;
    using pointer = const CoeffIndex*;
    using reference = const CoeffIndex&;

    iterator() = default;

    reference operator*() const noexcept { return cur_; }
    pointer operator->() const noexcept { return &cur_; }
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) noexcept { return a.cur_ == b.cur_; }

   private:
    friend class CrossIndexSet;
    iterator(const CrossIndexSet* set, CoeffIndex cur, int bound) : set_(set), cur_(cur), bound_(bound) {}

    const CrossIndexSet* set_ = nullptr;
    CoeffIndex cur_{};
    int bound_ = 0;
  };

  iterator begin() const;
  iterator end() const;

  std::vector<CoeffIndex> materialize() const;

 private:
  bool admits(int k, int j) const;

  int n_;
  double gamma_;
  int r_;
};

CrossIndexSet build_cross(int n, double gamma, int r);

/// Same as build_cross(n, gamma, r).size().
std::size_t cardinality(int n, double gamma, int r);

}  // namespace chebdiff

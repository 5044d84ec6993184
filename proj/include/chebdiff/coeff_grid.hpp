#pragma once

#include <compare>
#include <cstddef>
#include <vector>

namespace chebdiff {

struct CoeffIndex {
  int k = 0;
  int j = 0;

  auto operator<=>(const CoeffIndex&) const = default;
};

struct CoeffEntry {
  int k = 0;
  int j = 0;
  double value = 0.0;
};

/// Immutable table of Fourier-Chebyshev coefficients a_{k,j} on the box
/// [0, max_k] x [0, max_j]. Indices that are not stored are exact zeros.
///
/// Storage is dense row-major (k-major) when more than a quarter of the box
/// is populated and a sorted entry list otherwise. Either way iteration
/// visits nonzero entries in ascending (k, j) order.
class CoeffGrid {
 public:
  /// Empty grid with bounds (0, 0).
  CoeffGrid() = default;

  /// Throws std::invalid_argument on out-of-box indices, duplicates, or
  /// non-finite values.
  CoeffGrid(int max_k, int max_j, std::vector<CoeffEntry> entries);

  /// Row-major values, values[k * (max_j + 1) + j].
  static CoeffGrid from_dense(int max_k, int max_j, std::vector<double> values);

  int max_k() const noexcept { return max_k_; }
  int max_j() const noexcept { return max_j_; }

  /// Coefficient at (k, j); zero for anything not stored, including
  /// indices outside the box.
  double at(int k, int j) const noexcept;

  std::size_t nonzero_count() const noexcept { return nonzeros_; }
  bool empty() const noexcept { return nonzeros_ == 0; }
  bool dense_storage() const noexcept { return dense_; }

  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (dense_) {
      const std::size_t cols = static_cast<std::size_t>(max_j_) + 1;
      for (std::size_t idx = 0; idx < values_.size(); ++idx) {
        if (values_[idx] != 0.0) {
          fn(static_cast<int>(idx / cols), static_cast<int>(idx % cols), values_[idx]);
        }
      }
    } else {
      for (const auto& e : entries_) fn(e.k, e.j, e.value);
    }
  }

  std::vector<CoeffEntry> entries() const;

  /// Row-major copy of the whole box.
  std::vector<double> to_dense() const;

  /// Value equality over the union of both boxes (bounds may differ).
  friend bool operator==(const CoeffGrid& a, const CoeffGrid& b);

 private:
  void adopt_dense(std::vector<double> values);
  void adopt_sparse(std::vector<CoeffEntry> entries);

  int max_k_ = 0;
  int max_j_ = 0;
  bool dense_ = false;
  std::size_t nonzeros_ = 0;
  std::vector<double> values_;
  std::vector<CoeffEntry> entries_;
};

/// alpha * a + beta * b on the enclosing box.
CoeffGrid linear_combination(double alpha, const CoeffGrid& a, double beta, const CoeffGrid& b);

inline CoeffGrid operator-(const CoeffGrid& a, const CoeffGrid& b) { return linear_combination(1.0, a, -1.0, b); }
inline CoeffGrid operator+(const CoeffGrid& a, const CoeffGrid& b) { return linear_combination(1.0, a, 1.0, b); }
inline CoeffGrid operator*(double alpha, const CoeffGrid& a) { return linear_combination(alpha, a, 0.0, CoeffGrid{}); }

}  // namespace chebdiff

#include "chebdiff/diffop.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace chebdiff {

DerivativeOperator1D::DerivativeOperator1D(int max_k, double zeta0) : max_k_(max_k), zeta0_(zeta0) {
  if (max_k < 0) throw std::invalid_argument("derivative operator: max_k must be nonnegative");
}

double DerivativeOperator1D::entry(int l, int k) const {
  if (l < 0 || k > max_k_ || l >= k || (k + l) % 2 == 0) return 0.0;
  return 2.0 * k * (l == 0 ? zeta0_ : 1.0);
}

void DerivativeOperator1D::apply(std::span<const double> in, std::span<double> out) const {
  if (in.empty()) return;
  const std::size_t top = in.size() - 1;
  if (top > static_cast<std::size_t>(max_k_)) throw std::invalid_argument("derivative operator: input degree too high");
  if (out.size() < top) throw std::invalid_argument("derivative operator: output span too short");
  // parity_sum[p] accumulates k * a_k over k > l with k % 2 == p.
  double parity_sum[2] = {0.0, 0.0};
  for (std::size_t k = top; k >= 1; --k) {
    parity_sum[k % 2] += static_cast<double>(k) * in[k];
    const std::size_t l = k - 1;
    out[l] = 2.0 * (l == 0 ? zeta0_ : 1.0) * parity_sum[(l + 1) % 2];
  }
}

CoeffGrid differentiate_coeffs(const CoeffGrid& coeffs, int r, double zeta0) {
  if (r < 1) throw std::invalid_argument("differentiate: order r must be >= 1");
  const int out_max_k = std::max(0, coeffs.max_k() - r);
  if (coeffs.empty() || coeffs.max_k() < r) return CoeffGrid(out_max_k, coeffs.max_j(), {});

  // Work column by column so that sparse inputs (cross restrictions with a
  // long j = 0 row and short high-j rows) cost O(nonzeros), not O(box).
  const std::size_t jw = static_cast<std::size_t>(coeffs.max_j()) + 1;
  std::vector<int> column_top(jw, -1);
  coeffs.for_each_nonzero([&](int k, int j, double) {
    auto& top = column_top[static_cast<std::size_t>(j)];
    top = std::max(top, k);
  });

  const DerivativeOperator1D op(coeffs.max_k(), zeta0);
  std::vector<std::vector<double>> columns(jw);
  for (std::size_t j = 0; j < jw; ++j) {
    if (column_top[j] >= r) columns[j].assign(static_cast<std::size_t>(column_top[j]) + 1, 0.0);
  }
  coeffs.for_each_nonzero([&](int k, int j, double v) {
    auto& col = columns[static_cast<std::size_t>(j)];
    if (!col.empty()) col[static_cast<std::size_t>(k)] = v;
  });

  std::vector<double> scratch;
  std::vector<CoeffEntry> entries;
  for (std::size_t j = 0; j < jw; ++j) {
    auto& col = columns[j];
    if (col.empty()) continue;
    for (int step = 0; step < r; ++step) {
      scratch.assign(col.size() - 1, 0.0);
      op.apply(col, scratch);
      col.swap(scratch);
    }
    for (std::size_t l = 0; l < col.size(); ++l) {
      if (col[l] != 0.0) entries.push_back({static_cast<int>(l), static_cast<int>(j), col[l]});
    }
  }
  return CoeffGrid(out_max_k, coeffs.max_j(), std::move(entries));
}

CoeffGrid restrict_to(const CoeffGrid& coeffs, const CrossIndexSet& cross) {
  std::vector<CoeffEntry> kept;
  coeffs.for_each_nonzero([&](int k, int j, double v) {
    if (cross.contains(k, j)) kept.push_back({k, j, v});
  });
  return CoeffGrid(cross.n(), cross.max_j(), std::move(kept));
}

CoeffGrid truncated_derivative(const CoeffGrid& coeffs_delta, int n, double gamma, int r) {
  const auto cross = build_cross(n, gamma, r);
  return differentiate_coeffs(restrict_to(coeffs_delta, cross), r);
}

}  // namespace chebdiff

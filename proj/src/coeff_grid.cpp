#include "chebdiff/coeff_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chebdiff {

namespace {

constexpr double kDenseFillRatio = 0.25;

std::size_t box_size(int max_k, int max_j) {
  return (static_cast<std::size_t>(max_k) + 1) * (static_cast<std::size_t>(max_j) + 1);
}

void check_bounds(int max_k, int max_j) {
  if (max_k < 0 || max_j < 0) throw std::invalid_argument("coefficient grid bounds must be nonnegative");
}

void check_finite(double v, int k, int j) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("non-finite coefficient at (" + std::to_string(k) + "," + std::to_string(j) + ")");
  }
}

}  // namespace

CoeffGrid::CoeffGrid(int max_k, int max_j, std::vector<CoeffEntry> entries) : max_k_(max_k), max_j_(max_j) {
  check_bounds(max_k, max_j);
  for (const auto& e : entries) {
    if (e.k < 0 || e.j < 0 || e.k > max_k || e.j > max_j) {
      throw std::invalid_argument("coefficient index (" + std::to_string(e.k) + "," + std::to_string(e.j) +
                                  ") outside the grid box");
    }
    check_finite(e.value, e.k, e.j);
  }
  std::sort(entries.begin(), entries.end(),
            [](const CoeffEntry& a, const CoeffEntry& b) { return CoeffIndex{a.k, a.j} < CoeffIndex{b.k, b.j}; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].k == entries[i - 1].k && entries[i].j == entries[i - 1].j) {
      throw std::invalid_argument("duplicate coefficient index (" + std::to_string(entries[i].k) + "," +
                                  std::to_string(entries[i].j) + ")");
    }
  }
  std::erase_if(entries, [](const CoeffEntry& e) { return e.value == 0.0; });

  if (static_cast<double>(entries.size()) > kDenseFillRatio * static_cast<double>(box_size(max_k, max_j))) {
    std::vector<double> values(box_size(max_k, max_j), 0.0);
    for (const auto& e : entries) {
      values[static_cast<std::size_t>(e.k) * (static_cast<std::size_t>(max_j) + 1) + static_cast<std::size_t>(e.j)] =
          e.value;
    }
    adopt_dense(std::move(values));
  } else {
    adopt_sparse(std::move(entries));
  }
}

CoeffGrid CoeffGrid::from_dense(int max_k, int max_j, std::vector<double> values) {
  check_bounds(max_k, max_j);
  if (values.size() != box_size(max_k, max_j)) {
    throw std::invalid_argument("dense coefficient table has the wrong size");
  }
  const std::size_t cols = static_cast<std::size_t>(max_j) + 1;
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    check_finite(values[idx], static_cast<int>(idx / cols), static_cast<int>(idx % cols));
  }
  CoeffGrid grid;
  grid.max_k_ = max_k;
  grid.max_j_ = max_j;
  const auto nnz = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return v != 0.0; }));
  if (static_cast<double>(nnz) > kDenseFillRatio * static_cast<double>(values.size())) {
    grid.adopt_dense(std::move(values));
  } else {
    std::vector<CoeffEntry> entries;
    entries.reserve(nnz);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
      if (values[idx] != 0.0) entries.push_back({static_cast<int>(idx / cols), static_cast<int>(idx % cols), values[idx]});
    }
    grid.adopt_sparse(std::move(entries));
  }
  return grid;
}

void CoeffGrid::adopt_dense(std::vector<double> values) {
  dense_ = true;
  nonzeros_ = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return v != 0.0; }));
  values_ = std::move(values);
  entries_.clear();
}

void CoeffGrid::adopt_sparse(std::vector<CoeffEntry> entries) {
  dense_ = false;
  nonzeros_ = entries.size();
  entries_ = std::move(entries);
  values_.clear();
}

double CoeffGrid::at(int k, int j) const noexcept {
  if (k < 0 || j < 0 || k > max_k_ || j > max_j_) return 0.0;
  if (dense_) {
    return values_[static_cast<std::size_t>(k) * (static_cast<std::size_t>(max_j_) + 1) + static_cast<std::size_t>(j)];
  }
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), CoeffIndex{k, j},
                                   [](const CoeffEntry& e, const CoeffIndex& key) { return CoeffIndex{e.k, e.j} < key; });
  if (it != entries_.end() && it->k == k && it->j == j) return it->value;
  return 0.0;
}

std::vector<CoeffEntry> CoeffGrid::entries() const {
  std::vector<CoeffEntry> out;
  out.reserve(nonzeros_);
  for_each_nonzero([&](int k, int j, double v) { out.push_back({k, j, v}); });
  return out;
}

std::vector<double> CoeffGrid::to_dense() const {
  if (dense_) return values_;
  std::vector<double> out(box_size(max_k_, max_j_), 0.0);
  const std::size_t cols = static_cast<std::size_t>(max_j_) + 1;
  for (const auto& e : entries_) out[static_cast<std::size_t>(e.k) * cols + static_cast<std::size_t>(e.j)] = e.value;
  return out;
}

bool operator==(const CoeffGrid& a, const CoeffGrid& b) {
  if (a.nonzero_count() != b.nonzero_count()) return false;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].k != eb[i].k || ea[i].j != eb[i].j || ea[i].value != eb[i].value) return false;
  }
  return true;
}

CoeffGrid linear_combination(double alpha, const CoeffGrid& a, double beta, const CoeffGrid& b) {
  const int max_k = std::max(a.max_k(), b.max_k());
  const int max_j = std::max(a.max_j(), b.max_j());
  const std::size_t cols = static_cast<std::size_t>(max_j) + 1;
  const std::size_t box = box_size(max_k, max_j);
  if (a.dense_storage() || b.dense_storage()) {
    std::vector<double> values(box, 0.0);
    a.for_each_nonzero([&](int k, int j, double v) {
      values[static_cast<std::size_t>(k) * cols + static_cast<std::size_t>(j)] += alpha * v;
    });
    b.for_each_nonzero([&](int k, int j, double v) {
      values[static_cast<std::size_t>(k) * cols + static_cast<std::size_t>(j)] += beta * v;
    });
    return CoeffGrid::from_dense(max_k, max_j, std::move(values));
  }
  // Sorted merge of two sparse lists.
  const auto ea = a.entries();
  const auto eb = b.entries();
  std::vector<CoeffEntry> merged;
  merged.reserve(ea.size() + eb.size());
  std::size_t i = 0;
  std::size_t m = 0;
  while (i < ea.size() || m < eb.size()) {
    if (m == eb.size() || (i < ea.size() && CoeffIndex{ea[i].k, ea[i].j} < CoeffIndex{eb[m].k, eb[m].j})) {
      merged.push_back({ea[i].k, ea[i].j, alpha * ea[i].value});
      ++i;
    } else if (i == ea.size() || CoeffIndex{eb[m].k, eb[m].j} < CoeffIndex{ea[i].k, ea[i].j}) {
      merged.push_back({eb[m].k, eb[m].j, beta * eb[m].value});
      ++m;
    } else {
      merged.push_back({ea[i].k, ea[i].j, alpha * ea[i].value + beta * eb[m].value});
      ++i;
      ++m;
    }
  }
  return CoeffGrid(max_k, max_j, std::move(merged));
}

}  // namespace chebdiff

#include "chebdiff/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chebdiff/basis.hpp"

namespace chebdiff {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// table[i * (degree + 1) + k] = T_k(points[i])
std::vector<double> basis_table(std::span<const double> points, int degree) {
  const std::size_t width = static_cast<std::size_t>(degree) + 1;
  std::vector<double> table(points.size() * width);
  for (std::size_t i = 0; i < points.size(); ++i) {
    eval_orthonormal_all(points[i], std::span<double>(table.data() + i * width, width));
  }
  return table;
}

}  // namespace

int default_quadrature_nodes(int max_k, int max_j) { return 2 * std::max(max_k, max_j) + 1; }

CoeffGrid analyze(const BivariateFunction& f, int max_k, int max_j, int quad_n) {
  if (max_k < 0 || max_j < 0) throw std::invalid_argument("analyze: degree bounds must be nonnegative");
  if (quad_n == 0) quad_n = default_quadrature_nodes(max_k, max_j);
  if (quad_n < std::max(max_k, max_j) + 1) {
    throw std::invalid_argument("analyze: quad_n must be at least max(max_k, max_j) + 1");
  }
  const auto rule = gauss_chebyshev_rule(quad_n);
  const std::size_t n = rule.size();

  std::vector<double> samples(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < n; ++m) samples[i * n + m] = f(rule.nodes[i], rule.nodes[m]);
  }

  const std::size_t kw = static_cast<std::size_t>(max_k) + 1;
  const std::size_t jw = static_cast<std::size_t>(max_j) + 1;
  const auto tk = basis_table(rule.nodes, max_k);
  const auto tj = basis_table(rule.nodes, max_j);

  // partial(k, m) = sum_i T_k(t_i) f(t_i, tau_m)
  std::vector<double> partial(kw * n);
  for (std::size_t k = 0; k < kw; ++k) {
    for (std::size_t m = 0; m < n; ++m) {
      CompensatedSum acc;
      for (std::size_t i = 0; i < n; ++i) acc.add(tk[i * kw + k] * samples[i * n + m]);
      partial[k * n + m] = acc.value();
    }
  }

  const double w2 = rule.weights.front() * rule.weights.front();
  std::vector<double> values(kw * jw);
  for (std::size_t k = 0; k < kw; ++k) {
    for (std::size_t j = 0; j < jw; ++j) {
      CompensatedSum acc;
      for (std::size_t m = 0; m < n; ++m) acc.add(partial[k * n + m] * tj[m * jw + j]);
      values[k * jw + j] = w2 * acc.value();
    }
  }
  return CoeffGrid::from_dense(max_k, max_j, std::move(values));
}

double synthesize(const CoeffGrid& coeffs, double t, double tau) {
  const double x = checked_coordinate(t);
  const double y = checked_coordinate(tau);
  if (coeffs.empty()) return 0.0;
  std::vector<double> tk(static_cast<std::size_t>(coeffs.max_k()) + 1);
  std::vector<double> tj(static_cast<std::size_t>(coeffs.max_j()) + 1);
  eval_orthonormal_all(x, tk);
  eval_orthonormal_all(y, tj);
  CompensatedSum acc;
  coeffs.for_each_nonzero([&](int k, int j, double a) {
    acc.add(a * tk[static_cast<std::size_t>(k)] * tj[static_cast<std::size_t>(j)]);
  });
  return acc.value();
}

Matrix grid_synthesize(const CoeffGrid& coeffs, std::span<const double> ts, std::span<const double> taus) {
  for (double t : ts) checked_coordinate(t);
  for (double t : taus) checked_coordinate(t);
  Matrix out(ts.size(), taus.size());
  if (coeffs.empty() || ts.empty() || taus.empty()) return out;

  const std::size_t kw = static_cast<std::size_t>(coeffs.max_k()) + 1;
  const std::size_t jw = static_cast<std::size_t>(coeffs.max_j()) + 1;
  const auto tk = basis_table(ts, coeffs.max_k());
  const auto tj = basis_table(taus, coeffs.max_j());

  // Columns j that carry at least one coefficient; skipping the rest keeps
  // narrow grids (hyperbolic-cross supports) cheap.
  std::vector<char> used(jw, 0);
  coeffs.for_each_nonzero([&](int, int j, double) { used[static_cast<std::size_t>(j)] = 1; });
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < jw; ++j) {
    if (used[j]) active.push_back(j);
  }

  // inner(i, a) = sum_k a_{k, active[a]} T_k(t_i)
  std::vector<double> inner(ts.size() * active.size(), 0.0);
  std::vector<std::size_t> slot(jw, 0);
  for (std::size_t a = 0; a < active.size(); ++a) slot[active[a]] = a;
  coeffs.for_each_nonzero([&](int k, int j, double v) {
    const std::size_t col = slot[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < ts.size(); ++i) inner[i * active.size() + col] += v * tk[i * kw + static_cast<std::size_t>(k)];
  });

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double* row = inner.data() + i * active.size();
    for (std::size_t m = 0; m < taus.size(); ++m) {
      const double* basis = tj.data() + m * jw;
      double acc = 0.0;
      for (std::size_t a = 0; a < active.size(); ++a) acc += row[a] * basis[active[a]];
      out(i, m) = acc;
    }
  }
  return out;
}

}  // namespace chebdiff

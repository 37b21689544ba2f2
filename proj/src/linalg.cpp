#include "subrigid/linalg.hpp"

#include <cmath>
#include <utility>

#include "subrigid/error.hpp"

namespace subrigid {

std::vector<Rational> solve_exact(Matrix<Rational> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error("solve: dimension mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error("singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

FloatSolve solve_float(Matrix<double> a, std::vector<double> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error("solve: dimension mismatch");
  double pmin = INFINITY, pmax = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw Error("singular linear system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    pmin = std::min(pmin, std::fabs(a[col][col]));
    pmax = std::max(pmax, std::fabs(a[col][col]));
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  FloatSolve out;
  out.x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * out.x[c];
    out.x[i] = s / a[i][i];
  }
  out.pivot_ratio = n ? pmin / pmax : 1.0;
  return out;
}

std::vector<Rational> normalized_kernel_vector(Matrix<Rational> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  // Reduced row echelon form; remember pivot columns.
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c] == 0) continue;
      Rational f = a[k][c];
      for (std::size_t j = c; j < cols; ++j) a[k][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  if (cols - pivots.size() != 1) throw Error("kernel is not one-dimensional");
  std::size_t free_col = 0;
  for (std::size_t i = 0, p = 0; i < cols; ++i) {
    if (p < pivots.size() && pivots[p] == i) {
      ++p;
      continue;
    }
    free_col = i;
  }
  std::vector<Rational> v(cols, 0);
  v[free_col] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free_col];
  Rational sum = 0;
  for (const auto& x : v) sum += x;
  if (sum == 0) throw Error("kernel vector sums to zero");
  for (auto& x : v) x /= sum;
  return v;
}

}  // namespace subrigid

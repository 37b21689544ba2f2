#pragma once

#include <vector>

#include "subrigid/scalar.hpp"

namespace subrigid {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Gaussian elimination over Q. Throws Error("singular ...") when A is singular.
std::vector<Rational> solve_exact(Matrix<Rational> a, std::vector<Rational> b);

struct FloatSolve {
  std::vector<double> x;
  /// Smallest |pivot| / largest |pivot|; a crude conditioning indicator.
  double pivot_ratio = 1.0;
};

/// Partial-pivoting elimination in doubles. Throws on a zero pivot.
FloatSolve solve_float(Matrix<double> a, std::vector<double> b);

/// Basis vector of a one-dimensional right kernel, scaled to sum 1.
/// Throws when the kernel dimension is not exactly 1 or the sum vanishes.
std::vector<Rational> normalized_kernel_vector(Matrix<Rational> a);

}  // namespace subrigid

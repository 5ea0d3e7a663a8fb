#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qm1d {

/// Real symmetric tridiagonal matrix: diagonal a_0..a_{n-1}, off-diagonal
/// b_0..b_{n-2} with b_i = T(i, i+1) = T(i+1, i).
struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }
  /// Max absolute row sum.
  double norm_inf() const;
  std::vector<double> multiply(std::span<const double> x) const;
};

/// Number of eigenvalues strictly below sigma (Sturm sequence, long double).
std::size_t sturm_count(const SymmetricTridiagonal& t, long double sigma);

/// Eigenvalue of index `index` (0 = lowest) by bisection on the Sturm count.
double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t index);

struct Eigenpair {
  double value;
  std::vector<double> vector;  // unit Euclidean norm
  double residual;             // ||T v - value v||_2
};

/// The `count` lowest eigenpairs: bisection for values, inverse iteration
/// with cluster reorthogonalization for vectors.
std::vector<Eigenpair> lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count);

}  // namespace qm1d

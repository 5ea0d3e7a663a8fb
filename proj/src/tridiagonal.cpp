#include "qm1d/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qm1d/errors.hpp"

namespace qm1d {

double SymmetricTridiagonal::norm_inf() const {
  const std::size_t n = size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(off_diagonal[i - 1]);
    if (i + 1 < n) row += std::abs(off_diagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

std::vector<double> SymmetricTridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diagonal[i] * x[i];
    if (i > 0) s += off_diagonal[i - 1] * x[i - 1];
    if (i + 1 < n) s += off_diagonal[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::size_t sturm_count(const SymmetricTridiagonal& t, long double sigma) {
  const std::size_t n = t.size();
  const long double tiny = std::numeric_limits<long double>::min() * 1e4L;
  std::size_t count = 0;
  long double d = 1.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double b2 =
        i > 0 ? static_cast<long double>(t.off_diagonal[i - 1]) * t.off_diagonal[i - 1] : 0.0L;
    d = (static_cast<long double>(t.diagonal[i]) - sigma) - (i > 0 ? b2 / d : 0.0L);
    if (d == 0.0L) d = -tiny;
    if (d < 0.0L) ++count;
  }
  return count;
}

namespace {

std::pair<long double, long double> gershgorin(const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  long double lo = std::numeric_limits<long double>::max();
  long double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    long double r = 0.0L;
    if (i > 0) r += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < n) r += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - r);
    hi = std::max(hi, t.diagonal[i] + r);
  }
  const long double pad = 1e-12L * std::max(1.0L, std::max(std::abs(lo), std::abs(hi)));
  return {lo - pad, hi + pad};
}

// Solves (T - shift) x = rhs in place by LU with partial pivoting.
void shifted_solve(const SymmetricTridiagonal& t, double shift, double pivot_floor,
                   std::vector<double>& rhs) {
  const std::size_t n = t.size();
  // Row i of U: u0[i] (diag), u1[i], u2[i] (second superdiagonal from pivoting).
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
  std::vector<bool> swapped(n, false);
  const auto& b = t.off_diagonal;

  double cur_diag = t.diagonal[0] - shift;
  double cur_up = n > 1 ? b[0] : 0.0;
  double cur_up2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double below = b[i];
    const double next_diag = t.diagonal[i + 1] - shift;
    const double next_up = i + 2 < n ? b[i + 1] : 0.0;
    if (std::abs(cur_diag) >= std::abs(below)) {
      double piv = cur_diag;
      if (std::abs(piv) < pivot_floor) piv = std::copysign(pivot_floor, piv == 0.0 ? 1.0 : piv);
      const double m = below / piv;
      u0[i] = piv;
      u1[i] = cur_up;
      u2[i] = cur_up2;
      mult[i] = m;
      cur_diag = next_diag - m * cur_up;
      cur_up = next_up - m * cur_up2;
      cur_up2 = 0.0;
    } else {
      // Swap rows i and i+1.
      const double m = cur_diag / below;
      u0[i] = below;
      u1[i] = next_diag;
      u2[i] = next_up;
      mult[i] = m;
      swapped[i] = true;
      const double new_diag = cur_up - m * next_diag;
      const double new_up = cur_up2 - m * next_up;
      cur_diag = new_diag;
      cur_up = new_up;
      cur_up2 = 0.0;
    }
  }
  u0[n - 1] = std::abs(cur_diag) < pivot_floor ? std::copysign(pivot_floor, cur_diag == 0.0 ? 1.0 : cur_diag)
                                               : cur_diag;

  // Forward substitution with the recorded row swaps.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(rhs[i], rhs[i + 1]);
    rhs[i + 1] -= mult[i] * rhs[i];
  }
  // Back substitution.
  for (std::size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    if (ii + 1 < n) s -= u1[ii] * rhs[ii + 1];
    if (ii + 2 < n) s -= u2[ii] * rhs[ii + 2];
    rhs[ii] = s / u0[ii];
  }
}

double euclid_norm(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += static_cast<long double>(x) * x;
  return static_cast<double>(std::sqrt(s));
}

void scale_to_unit(std::vector<double>& v) {
  const double nrm = euclid_norm(v);
  require(nrm > 0.0 && std::isfinite(nrm), ErrorKind::solver, "inverse iteration collapsed");
  for (double& x : v) x /= nrm;
}

}  // namespace

double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t index) {
  require(index < t.size(), ErrorKind::parameter, "eigenvalue index out of range");
  auto [lo, hi] = gershgorin(t);
  for (int iter = 0; iter < 256; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

std::vector<Eigenpair> lowest_eigenpairs(const SymmetricTridiagonal& t, std::size_t count) {
  const std::size_t n = t.size();
  require(count >= 1 && count <= n, ErrorKind::parameter, "requested eigenpair count out of range");
  const double norm = std::max(t.norm_inf(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivot_floor = eps * norm;
  const double cluster = 1e-3 * norm;

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  std::vector<Eigenpair> pairs;
  pairs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double lambda = bisect_eigenvalue(t, k);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    scale_to_unit(v);

    // Previous vectors whose eigenvalues are close enough to contaminate.
    std::vector<std::size_t> neighbours;
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(pairs[j].value - lambda) < cluster) neighbours.push_back(j);
    }

    for (int iter = 0; iter < 4; ++iter) {
      shifted_solve(t, lambda, pivot_floor, v);
      for (std::size_t j : neighbours) {
        const auto& u = pairs[j].vector;
        long double dot = 0.0L;
        for (std::size_t i = 0; i < n; ++i) dot += static_cast<long double>(u[i]) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= static_cast<double>(dot) * u[i];
      }
      scale_to_unit(v);
    }

    const std::vector<double> tv = t.multiply(v);
    long double r2 = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const long double r = static_cast<long double>(tv[i]) - static_cast<long double>(lambda) * v[i];
      r2 += r * r;
    }
    pairs.push_back({lambda, std::move(v), static_cast<double>(std::sqrt(r2))});
  }
  return pairs;
}

}  // namespace qm1d

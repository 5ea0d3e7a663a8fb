#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qm1d/constants.hpp"

namespace qm1d {

using complex = std::complex<double>;
using ComplexVector = std::vector<complex>;
using RealVector = std::vector<double>;

/// Uniform mesh x_i = x_min + i*dx, i = 0..n-1, endpoints included.
class Grid {
 public:
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx_; }
  RealVector points() const;

  /// Trapezoid weight of node i.
  double weight(std::size_t i) const noexcept {
    return (i == 0 || i + 1 == n_) ? 0.5 * dx_ : dx_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  friend Grid make_grid(double x_min, double x_max, std::size_t n);
  Grid(double x_min, double x_max, std::size_t n);

  double x_min_ = 0.0;
  double x_max_ = 0.0;
  std::size_t n_ = 0;
  double dx_ = 0.0;
};

/// Throws ErrorKind::configuration unless n >= 8 and x_max > x_min.
Grid make_grid(double x_min, double x_max, std::size_t n);

/// Momentum mesh conjugate to a Grid: p_j = dp * (j - floor(n/2)),
/// dp = 2*pi*hbar / (n*dx). Centered and monotone increasing.
struct MomentumGrid {
  std::size_t n = 0;
  double dp = 0.0;
  double p_min = 0.0;

  double p(std::size_t j) const noexcept { return p_min + static_cast<double>(j) * dp; }
  RealVector points() const;

  friend bool operator==(const MomentumGrid&, const MomentumGrid&) = default;
};

MomentumGrid momentum_grid(const Grid& grid, const PhysicalConstants& constants);

enum class Space { position, momentum };

/// Complex amplitudes on a grid. Momentum-space states carry their
/// conjugate mesh; position-space states do not.
class WaveFunction {
 public:
  WaveFunction(Grid grid, ComplexVector amplitudes);
  WaveFunction(Grid grid, MomentumGrid momenta, ComplexVector amplitudes);

  const Grid& grid() const noexcept { return grid_; }
  Space space() const noexcept { return momenta_ ? Space::momentum : Space::position; }
  const MomentumGrid& momenta() const;
  std::size_t size() const noexcept { return amplitudes_.size(); }

  std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
  const complex& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }

  /// Integration weight of sample i: trapezoid in x, uniform dp in p.
  double weight(std::size_t i) const noexcept;

  /// Same representation, new amplitudes (size must match).
  WaveFunction with_amplitudes(ComplexVector amplitudes) const;

  /// Coordinate of sample i (x_i or p_i).
  double coordinate(std::size_t i) const noexcept;

 private:
  Grid grid_;
  std::optional<MomentumGrid> momenta_;
  ComplexVector amplitudes_;
};

/// Samples f(x) on the grid as a position-space state.
template <class F>
WaveFunction sample(const Grid& grid, F&& f) {
  ComplexVector values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = complex(f(grid.x(i)));
  return WaveFunction(grid, std::move(values));
}

double norm_squared(const WaveFunction& psi);

/// Positive multiple of psi with unit norm. Zero norm -> degenerate_state.
WaveFunction normalize(const WaveFunction& psi);

/// <psi|phi>, conjugate-linear in psi.
complex inner_product(const WaveFunction& psi, const WaveFunction& phi);

/// Central-difference derivative of samples; one-sided second-order
/// stencils at the two ends.
ComplexVector derivative(std::span<const complex> values, double dx);
RealVector derivative(std::span<const double> values, double dx);

/// |psi|^2 pointwise.
RealVector probability_density(const WaveFunction& psi);

/// j = hbar/m * Im(conj(psi) dpsi/dx). Position space only.
RealVector probability_current(const WaveFunction& psi, const PhysicalConstants& constants);

/// (P_after - P_before)/dt + d/dx j(midpoint), midpoint = (before + after)/2.
RealVector continuity_residual(const WaveFunction& before, const WaveFunction& after, double dt,
                               const PhysicalConstants& constants);

/// max(|psi_0|, |psi_{n-1}|) / max_i |psi_i|; 0 for the zero state.
double edge_amplitude(const WaveFunction& psi);

}  // namespace qm1d

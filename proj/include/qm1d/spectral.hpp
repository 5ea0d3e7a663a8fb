#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qm1d/core.hpp"

namespace qm1d {

using Warnings = std::vector<std::string>;

/// In-place unnormalized complex DFT of a fixed length. Plans are created
/// once per object; execution is reentrant.
class FourierPlan {
 public:
  explicit FourierPlan(std::size_t n);
  ~FourierPlan();
  FourierPlan(FourierPlan&&) noexcept;
  FourierPlan& operator=(FourierPlan&&) noexcept;
  FourierPlan(const FourierPlan&) = delete;
  FourierPlan& operator=(const FourierPlan&) = delete;

  std::size_t size() const noexcept { return n_; }
  /// out[m] = sum_j in[j] exp(-2 pi i j m / n)
  void forward(std::span<complex> data) const;
  /// out[j] = sum_m in[m] exp(+2 pi i j m / n)
  void backward(std::span<complex> data) const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// Transforms between x-space and p-space that approximate
///   phi(p) = (2 pi hbar)^(-1/2) int dx psi(x) exp(-i p x / hbar)
/// and its inverse, with momenta stored centered. Holds the FFT plan and
/// phase tables for one (grid, hbar) pair.
class SpectralTransform {
 public:
  SpectralTransform(const Grid& grid, const PhysicalConstants& constants);

  const Grid& grid() const noexcept { return grid_; }
  const MomentumGrid& momenta() const noexcept { return momenta_; }

  WaveFunction to_momentum(const WaveFunction& psi, Warnings* warnings = nullptr) const;
  WaveFunction to_position(const WaveFunction& phi) const;

  /// Raw amplitude versions used by the propagators.
  void forward(std::span<complex> values) const;
  void backward(std::span<complex> values) const;

 private:
  Grid grid_;
  MomentumGrid momenta_;
  FourierPlan plan_;
  ComplexVector offset_phase_;  // exp(-i p_m x_min / hbar)
  double forward_scale_;
  double backward_scale_;
};

/// Edge threshold above which the periodic-wrap warning fires.
inline constexpr double kEdgeAmplitudeLimit = 1e-10;

WaveFunction to_momentum_space(const WaveFunction& psi, const PhysicalConstants& constants,
                               Warnings* warnings = nullptr);
WaveFunction to_position_space(const WaveFunction& phi, const PhysicalConstants& constants);

/// Spectral derivative d psi/dx via the momentum representation.
ComplexVector spectral_derivative(const WaveFunction& psi, const PhysicalConstants& constants);

}  // namespace qm1d

#include "qm1d/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qm1d/errors.hpp"

namespace qm1d {

namespace {

// FFTW's planner is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FourierPlan::Impl {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

FourierPlan::FourierPlan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  require(n > 0, ErrorKind::shape, "empty transform");
  ComplexVector scratch(n);
  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  impl_->forward = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                    FFTW_FORWARD, flags);
  impl_->backward = fftw_plan_dft_1d(len, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                     FFTW_BACKWARD, flags);
  require(impl_->forward && impl_->backward, ErrorKind::solver, "FFT planning failed");
}

FourierPlan::~FourierPlan() = default;
FourierPlan::FourierPlan(FourierPlan&&) noexcept = default;
FourierPlan& FourierPlan::operator=(FourierPlan&&) noexcept = default;

void FourierPlan::forward(std::span<complex> data) const {
  require(data.size() == n_, ErrorKind::shape, "transform length mismatch");
  fftw_execute_dft(impl_->forward, as_fftw(data.data()), as_fftw(data.data()));
}

void FourierPlan::backward(std::span<complex> data) const {
  require(data.size() == n_, ErrorKind::shape, "transform length mismatch");
  fftw_execute_dft(impl_->backward, as_fftw(data.data()), as_fftw(data.data()));
}

SpectralTransform::SpectralTransform(const Grid& grid, const PhysicalConstants& constants)
    : grid_(grid),
      momenta_(momentum_grid(grid, constants)),
      plan_(grid.size()),
      offset_phase_(grid.size()) {
  const double root = std::sqrt(2.0 * std::numbers::pi * constants.hbar);
  forward_scale_ = grid.dx() / root;
  backward_scale_ = momenta_.dp / root;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    offset_phase_[m] = std::polar(1.0, -momenta_.p(m) * grid.x_min() / constants.hbar);
  }
}

// Centered slot m holds FFT bin (m - n/2) mod n.
void SpectralTransform::forward(std::span<complex> values) const {
  const std::size_t n = values.size();
  plan_.forward(values);
  ComplexVector centered(n);
  const std::size_t half = n / 2;
  for (std::size_t m = 0; m < n; ++m) {
    centered[m] = forward_scale_ * offset_phase_[m] * values[(m + n - half) % n];
  }
  std::copy(centered.begin(), centered.end(), values.begin());
}

void SpectralTransform::backward(std::span<complex> values) const {
  const std::size_t n = values.size();
  require(n == grid_.size(), ErrorKind::shape, "transform length mismatch");
  ComplexVector bins(n);
  const std::size_t half = n / 2;
  for (std::size_t m = 0; m < n; ++m) {
    bins[(m + n - half) % n] = backward_scale_ * std::conj(offset_phase_[m]) * values[m];
  }
  plan_.backward(bins);
  std::copy(bins.begin(), bins.end(), values.begin());
}

WaveFunction SpectralTransform::to_momentum(const WaveFunction& psi, Warnings* warnings) const {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "to_momentum_space requires a position-space state");
  require(psi.grid() == grid_, ErrorKind::shape, "state grid differs from transform grid");
  if (warnings) {
    const double edge = edge_amplitude(psi);
    if (edge > kEdgeAmplitudeLimit) {
      std::ostringstream msg;
      msg << "edge amplitude " << edge << " exceeds " << kEdgeAmplitudeLimit
          << "; periodic wrap may corrupt the transform";
      warnings->push_back(msg.str());
    }
  }
  ComplexVector values(psi.amplitudes().begin(), psi.amplitudes().end());
  forward(values);
  return WaveFunction(grid_, momenta_, std::move(values));
}

WaveFunction SpectralTransform::to_position(const WaveFunction& phi) const {
  require(phi.space() == Space::momentum, ErrorKind::space_tag,
          "to_position_space requires a momentum-space state");
  require(phi.grid() == grid_ && phi.momenta() == momenta_, ErrorKind::shape,
          "state mesh differs from transform mesh");
  ComplexVector values(phi.amplitudes().begin(), phi.amplitudes().end());
  backward(values);
  return WaveFunction(grid_, std::move(values));
}

WaveFunction to_momentum_space(const WaveFunction& psi, const PhysicalConstants& constants,
                               Warnings* warnings) {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "to_momentum_space requires a position-space state");
  return SpectralTransform(psi.grid(), constants).to_momentum(psi, warnings);
}

WaveFunction to_position_space(const WaveFunction& phi, const PhysicalConstants& constants) {
  require(phi.space() == Space::momentum, ErrorKind::space_tag,
          "to_position_space requires a momentum-space state");
  return SpectralTransform(phi.grid(), constants).to_position(phi);
}

ComplexVector spectral_derivative(const WaveFunction& psi, const PhysicalConstants& constants) {
  const SpectralTransform transform(psi.grid(), constants);
  ComplexVector values(psi.amplitudes().begin(), psi.amplitudes().end());
  transform.forward(values);
  const auto& p = transform.momenta();
  const std::size_t n = values.size();
  for (std::size_t m = 0; m < n; ++m) values[m] *= complex(0.0, p.p(m) / constants.hbar);
  // The Nyquist bin of an even-length mesh has no partner; drop it so the
  // derivative of a real function stays real.
  if (n % 2 == 0) values[0] = 0.0;
  transform.backward(values);
  return values;
}

}  // namespace qm1d

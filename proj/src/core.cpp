#include "qm1d/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qm1d/errors.hpp"

namespace qm1d {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::degenerate_state: return "degenerate_state";
    case ErrorKind::shape: return "shape";
    case ErrorKind::space_tag: return "space_tag";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::evanescent: return "evanescent";
    case ErrorKind::edge_escape: return "edge_escape";
    case ErrorKind::operator_kind: return "operator";
    case ErrorKind::solver: return "solver";
  }
  return "unknown";
}

PhysicalConstants PhysicalConstants::natural() {
  return {1.0, 2.0 * std::numbers::pi, 1.0, 1.0, 1.0};
}

PhysicalConstants PhysicalConstants::si() {
  constexpr double h = 6.6261e-34;
  return {h / (2.0 * std::numbers::pi), h, 9.1093837015e-31, 1.3807e-23, 2.998e8};
}

PhysicalConstants PhysicalConstants::with(double hbar, double mass) {
  require(hbar > 0.0 && mass > 0.0, ErrorKind::parameter, "hbar and mass must be positive");
  PhysicalConstants c = natural();
  c.hbar = hbar;
  c.h = 2.0 * std::numbers::pi * hbar;
  c.mass = mass;
  return c;
}

Grid::Grid(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n), dx_((x_max - x_min) / static_cast<double>(n - 1)) {}

Grid make_grid(double x_min, double x_max, std::size_t n) {
  require(std::isfinite(x_min) && std::isfinite(x_max), ErrorKind::configuration,
          "grid bounds must be finite");
  require(x_max > x_min, ErrorKind::configuration, "grid requires x_max > x_min");
  require(n >= 8, ErrorKind::configuration, "grid requires at least 8 points");
  return Grid(x_min, x_max, n);
}

RealVector Grid::points() const {
  RealVector xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

MomentumGrid momentum_grid(const Grid& grid, const PhysicalConstants& constants) {
  const std::size_t n = grid.size();
  const double dp = 2.0 * std::numbers::pi * constants.hbar / (static_cast<double>(n) * grid.dx());
  return {n, dp, -static_cast<double>(n / 2) * dp};
}

RealVector MomentumGrid::points() const {
  RealVector ps(n);
  for (std::size_t j = 0; j < n; ++j) ps[j] = p(j);
  return ps;
}

WaveFunction::WaveFunction(Grid grid, ComplexVector amplitudes)
    : grid_(grid), amplitudes_(std::move(amplitudes)) {
  require(amplitudes_.size() == grid_.size(), ErrorKind::shape,
          "amplitude count does not match grid size");
}

WaveFunction::WaveFunction(Grid grid, MomentumGrid momenta, ComplexVector amplitudes)
    : grid_(grid), momenta_(momenta), amplitudes_(std::move(amplitudes)) {
  require(amplitudes_.size() == grid_.size() && momenta.n == grid_.size(), ErrorKind::shape,
          "amplitude count does not match grid size");
}

const MomentumGrid& WaveFunction::momenta() const {
  require(momenta_.has_value(), ErrorKind::space_tag, "state is not in momentum space");
  return *momenta_;
}

double WaveFunction::weight(std::size_t i) const noexcept {
  return momenta_ ? momenta_->dp : grid_.weight(i);
}

double WaveFunction::coordinate(std::size_t i) const noexcept {
  return momenta_ ? momenta_->p(i) : grid_.x(i);
}

WaveFunction WaveFunction::with_amplitudes(ComplexVector amplitudes) const {
  require(amplitudes.size() == amplitudes_.size(), ErrorKind::shape,
          "amplitude count does not match grid size");
  WaveFunction out = *this;
  out.amplitudes_ = std::move(amplitudes);
  return out;
}

double norm_squared(const WaveFunction& psi) {
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) sum += psi.weight(i) * std::norm(psi[i]);
  return sum;
}

WaveFunction normalize(const WaveFunction& psi) {
  const double nrm2 = norm_squared(psi);
  require(nrm2 > 0.0 && std::isfinite(nrm2), ErrorKind::degenerate_state,
          "cannot normalize a zero-norm state");
  const double scale = 1.0 / std::sqrt(nrm2);
  // Leave already-normalized states untouched so normalize is idempotent.
  if (std::abs(nrm2 - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return psi;
  ComplexVector out(psi.amplitudes().begin(), psi.amplitudes().end());
  for (auto& v : out) v *= scale;
  return psi.with_amplitudes(std::move(out));
}

namespace {

void require_same_representation(const WaveFunction& a, const WaveFunction& b) {
  require(a.grid() == b.grid(), ErrorKind::shape, "states live on different grids");
  require(a.space() == b.space(), ErrorKind::space_tag, "states are in different spaces");
  if (a.space() == Space::momentum) {
    require(a.momenta() == b.momenta(), ErrorKind::shape, "states use different momentum meshes");
  }
}

void require_position(const WaveFunction& psi) {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "operation requires a position-space state");
}

template <class T>
std::vector<T> derivative_impl(std::span<const T> f, double dx) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  if (n < 3) return d;
  const double inv2 = 0.5 / dx;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * inv2;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
  return d;
}

}  // namespace

complex inner_product(const WaveFunction& psi, const WaveFunction& phi) {
  require_same_representation(psi, phi);
  complex sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) sum += psi.weight(i) * std::conj(psi[i]) * phi[i];
  return sum;
}

ComplexVector derivative(std::span<const complex> values, double dx) {
  return derivative_impl(values, dx);
}

RealVector derivative(std::span<const double> values, double dx) {
  return derivative_impl(values, dx);
}

RealVector probability_density(const WaveFunction& psi) {
  RealVector p(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
  return p;
}

RealVector probability_current(const WaveFunction& psi, const PhysicalConstants& constants) {
  require_position(psi);
  const ComplexVector d = derivative(psi.amplitudes(), psi.grid().dx());
  // hbar/(2im) [conj(psi) psi' - psi conj(psi')] = hbar/m Im(conj(psi) psi')
  const double scale = constants.hbar / constants.mass;
  RealVector j(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) j[i] = scale * std::imag(std::conj(psi[i]) * d[i]);
  return j;
}

RealVector continuity_residual(const WaveFunction& before, const WaveFunction& after, double dt,
                               const PhysicalConstants& constants) {
  require_same_representation(before, after);
  require_position(before);
  require(dt > 0.0, ErrorKind::parameter, "continuity residual requires dt > 0");
  ComplexVector mid(before.size());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (before[i] + after[i]);
  const RealVector j = probability_current(before.with_amplitudes(std::move(mid)), constants);
  const RealVector dj = derivative(j, before.grid().dx());
  RealVector r(before.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = (std::norm(after[i]) - std::norm(before[i])) / dt + dj[i];
  }
  return r;
}

double edge_amplitude(const WaveFunction& psi) {
  double peak = 0.0;
  for (const auto& v : psi.amplitudes()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(psi[0]), std::abs(psi[psi.size() - 1])) / peak;
}

}  // namespace qm1d

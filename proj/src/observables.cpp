#include "qm1d/observables.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <cmath>
#include <sstream>

#include "qm1d/errors.hpp"

namespace qm1d {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n), lower_(std::min(lower, n ? n - 1 : 0)), upper_(std::min(upper, n ? n - 1 : 0)),
      data_(n * (lower_ + upper_ + 1), complex(0.0)) {
  require(n > 0, ErrorKind::shape, "banded matrix must be non-empty");
}

BandedMatrix BandedMatrix::diagonal(std::span<const complex> values) {
  BandedMatrix m(values.size(), 0, 0);
  for (std::size_t i = 0; i < values.size(); ++i) m.ref(i, i) = values[i];
  return m;
}

complex BandedMatrix::at(std::size_t i, std::size_t j) const noexcept {
  if (!in_band(i, j)) return 0.0;
  return data_[i * (lower_ + upper_ + 1) + (j + lower_ - i)];
}

complex& BandedMatrix::ref(std::size_t i, std::size_t j) {
  require(i < n_ && j < n_ && in_band(i, j), ErrorKind::shape, "banded index outside the band");
  return data_[i * (lower_ + upper_ + 1) + (j + lower_ - i)];
}

ComplexVector BandedMatrix::multiply(std::span<const complex> x) const {
  require(x.size() == n_, ErrorKind::shape, "vector length differs from matrix size");
  ComplexVector y(n_, complex(0.0));
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i >= lower_ ? i - lower_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + upper_);
    complex s = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) s += at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

BandedMatrix BandedMatrix::adjoint() const {
  BandedMatrix out(n_, upper_, lower_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (in_band(i, j)) out.ref(j, i) = std::conj(at(i, j));
    }
  }
  return out;
}

double BandedMatrix::hermitian_defect() const {
  double worst = 0.0;
  const std::size_t band = std::max(lower_, upper_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i >= band ? i - band : 0;
    const std::size_t j1 = std::min(n_ - 1, i + band);
    for (std::size_t j = j0; j <= j1; ++j) {
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    }
  }
  return worst;
}

BandedMatrix operator*(const BandedMatrix& a, const BandedMatrix& b) {
  require(a.n_ == b.n_, ErrorKind::shape, "matrix sizes differ");
  const std::size_t n = a.n_;
  BandedMatrix c(n, a.lower_ + b.lower_, a.upper_ + b.upper_);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k0 = i >= a.lower_ ? i - a.lower_ : 0;
    const std::size_t k1 = std::min(n - 1, i + a.upper_);
    for (std::size_t k = k0; k <= k1; ++k) {
      const complex aik = a.at(i, k);
      if (aik == 0.0) continue;
      const std::size_t j0 = k >= b.lower_ ? k - b.lower_ : 0;
      const std::size_t j1 = std::min(n - 1, k + b.upper_);
      for (std::size_t j = j0; j <= j1; ++j) c.ref(i, j) += aik * b.at(k, j);
    }
  }
  return c;
}

BandedMatrix operator-(const BandedMatrix& a, const BandedMatrix& b) {
  require(a.n_ == b.n_, ErrorKind::shape, "matrix sizes differ");
  BandedMatrix c(a.n_, std::max(a.lower_, b.lower_), std::max(a.upper_, b.upper_));
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t j = 0; j < a.n_; ++j) {
      if (c.in_band(i, j)) c.ref(i, j) = a.at(i, j) - b.at(i, j);
    }
  }
  return c;
}

BandedMatrix operator*(complex s, const BandedMatrix& a) {
  BandedMatrix c = a;
  for (auto& v : c.data_) v *= s;
  return c;
}

BandedMatrix commutator(const BandedMatrix& a, const BandedMatrix& b) { return a * b - b * a; }

LinearOperator LinearOperator::position(const Grid& grid) {
  return LinearOperator(Kind::position, grid);
}

LinearOperator LinearOperator::momentum(const Grid& grid, const PhysicalConstants& constants) {
  LinearOperator op(Kind::momentum, grid);
  op.constants_ = constants;
  return op;
}

LinearOperator LinearOperator::hamiltonian(DiscreteHamiltonian H) {
  LinearOperator op(Kind::hamiltonian, H.grid());
  op.constants_.hbar = H.hbar();
  op.hamiltonian_ = std::move(H);
  return op;
}

LinearOperator LinearOperator::custom(const Grid& grid, BandedMatrix matrix) {
  require(matrix.size() == grid.size(), ErrorKind::shape, "operator size differs from grid size");
  LinearOperator op(Kind::custom, grid);
  op.hermitian_ = matrix.hermitian_defect() < kHermitianTolerance;
  op.matrix_ = std::move(matrix);
  return op;
}

namespace {

void require_compatible(const LinearOperator& op, const WaveFunction& psi) {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "operators act on position-space states");
  require(psi.grid() == op.grid(), ErrorKind::shape, "state grid differs from operator grid");
}

void check_norm(const WaveFunction& psi, Warnings* warnings) {
  if (!warnings) return;
  const double nrm = norm_squared(psi);
  if (std::abs(nrm - 1.0) > kNormWarningTolerance) {
    std::ostringstream msg;
    msg << "state norm " << nrm << " differs from 1";
    warnings->push_back(msg.str());
  }
}

PhysicalConstants with_hbar(double hbar) {
  PhysicalConstants c = PhysicalConstants::natural();
  c.hbar = hbar;
  c.h = 2.0 * std::numbers::pi * hbar;
  return c;
}

// (m0, m1, m2) = int dp |phi|^2 p^k for k = 0, 1, 2.
std::array<double, 3> momentum_moments(const WaveFunction& psi, double hbar) {
  const WaveFunction phi = to_momentum_space(psi, with_hbar(hbar));
  const MomentumGrid& mg = phi.momenta();
  std::array<long double, 3> m{0.0L, 0.0L, 0.0L};
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const long double w = std::norm(phi[j]) * mg.dp;
    const long double p = mg.p(j);
    m[0] += w;
    m[1] += w * p;
    m[2] += w * p * p;
  }
  return {static_cast<double>(m[0]), static_cast<double>(m[1]), static_cast<double>(m[2])};
}

}  // namespace

WaveFunction LinearOperator::apply(const WaveFunction& psi) const {
  require_compatible(*this, psi);
  switch (kind_) {
    case Kind::position: {
      ComplexVector out(psi.size());
      for (std::size_t i = 0; i < psi.size(); ++i) out[i] = grid_.x(i) * psi[i];
      return psi.with_amplitudes(std::move(out));
    }
    case Kind::momentum: {
      ComplexVector d = spectral_derivative(psi, constants_);
      const complex factor(0.0, -constants_.hbar);
      for (auto& v : d) v *= factor;
      return psi.with_amplitudes(std::move(d));
    }
    case Kind::hamiltonian:
      return hamiltonian_->apply(psi);
    case Kind::custom:
      return psi.with_amplitudes(matrix_->multiply(psi.amplitudes()));
  }
  fail(ErrorKind::unsupported, "unknown operator kind");
}

double momentum_expectation_pspace(const WaveFunction& psi, const PhysicalConstants& constants) {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "momentum expectation takes a position-space state");
  return momentum_moments(psi, constants.hbar)[1];
}

double momentum_expectation_xspace(const WaveFunction& psi, const PhysicalConstants& constants) {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "momentum expectation takes a position-space state");
  const ComplexVector d = derivative(psi.amplitudes(), psi.grid().dx());
  complex sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) sum += psi.weight(i) * std::conj(psi[i]) * d[i];
  return std::real(complex(0.0, -constants.hbar) * sum);
}

complex expectation(const LinearOperator& op, const WaveFunction& psi, Warnings* warnings) {
  require_compatible(op, psi);
  check_norm(psi, warnings);
  if (op.kind() == LinearOperator::Kind::momentum) {
    return momentum_moments(psi, op.hbar())[1];
  }
  return inner_product(psi, op.apply(psi));
}

double uncertainty(const LinearOperator& op, const WaveFunction& psi) {
  require_compatible(op, psi);
  require(op.is_hermitian(), ErrorKind::operator_kind,
          "uncertainty requires a Hermitian operator");
  if (op.kind() == LinearOperator::Kind::momentum) {
    const auto m = momentum_moments(psi, op.hbar());
    return std::sqrt(std::max(0.0, m[2] - m[1] * m[1]));
  }
  const double mean = std::real(inner_product(psi, op.apply(psi)));
  const WaveFunction a_psi = op.apply(psi);
  ComplexVector shifted(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) shifted[i] = a_psi[i] - mean * psi[i];
  const WaveFunction once = psi.with_amplitudes(std::move(shifted));
  const WaveFunction a_once = op.apply(once);
  ComplexVector twice(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) twice[i] = a_once[i] - mean * once[i];
  const double variance = std::real(inner_product(psi, psi.with_amplitudes(std::move(twice))));
  return std::sqrt(std::max(0.0, variance));
}

complex commutator_expectation(const LinearOperator& a, const LinearOperator& b,
                               const WaveFunction& psi) {
  require_compatible(a, psi);
  require_compatible(b, psi);
  const complex ab = inner_product(psi, a.apply(b.apply(psi)));
  const complex ba = inner_product(psi, b.apply(a.apply(psi)));
  return ab - ba;
}

UncertaintyReport uncertainty_bound_check(const LinearOperator& a, const LinearOperator& b,
                                          const WaveFunction& psi) {
  UncertaintyReport r;
  r.commutator = commutator_expectation(a, b, psi);
  r.lhs = uncertainty(a, psi) * uncertainty(b, psi);
  r.rhs = 0.5 * std::abs(r.commutator);
  r.satisfied = r.lhs >= r.rhs - kBoundSlack;
  return r;
}

}  // namespace qm1d

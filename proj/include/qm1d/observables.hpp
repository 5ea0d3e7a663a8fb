#pragma once

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "qm1d/core.hpp"
#include "qm1d/eigensolver.hpp"
#include "qm1d/spectral.hpp"

namespace qm1d {

/// Complex n x n matrix with `lower` sub- and `upper` super-diagonals.
/// A dense matrix is the case lower = upper = n - 1.
class BandedMatrix {
 public:
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper);
  static BandedMatrix dense(std::size_t n) { return BandedMatrix(n, n - 1, n - 1); }
  static BandedMatrix diagonal(std::span<const complex> values);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return lower_; }
  std::size_t upper() const noexcept { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept {
    return j + lower_ >= i && i + upper_ >= j;
  }
  /// Zero outside the band.
  complex at(std::size_t i, std::size_t j) const noexcept;
  /// Requires in_band(i, j).
  complex& ref(std::size_t i, std::size_t j);

  ComplexVector multiply(std::span<const complex> x) const;
  BandedMatrix adjoint() const;
  /// max |A - A^dagger|
  double hermitian_defect() const;

  friend BandedMatrix operator*(const BandedMatrix& a, const BandedMatrix& b);
  friend BandedMatrix operator-(const BandedMatrix& a, const BandedMatrix& b);
  friend BandedMatrix operator*(complex s, const BandedMatrix& a);

 private:
  std::size_t n_;
  std::size_t lower_;
  std::size_t upper_;
  std::vector<complex> data_;  // row-major, (lower + upper + 1) per row
};

/// [A, B] = AB - BA.
BandedMatrix commutator(const BandedMatrix& a, const BandedMatrix& b);

/// Hermitian tolerance for custom operators.
inline constexpr double kHermitianTolerance = 1e-12;

/// Observable on a position-space grid: x, p = -i hbar d/dx (applied
/// spectrally), a discrete Hamiltonian, or a custom banded matrix.
class LinearOperator {
 public:
  enum class Kind { position, momentum, hamiltonian, custom };

  static LinearOperator position(const Grid& grid);
  static LinearOperator momentum(const Grid& grid, const PhysicalConstants& constants);
  static LinearOperator hamiltonian(DiscreteHamiltonian H);
  static LinearOperator custom(const Grid& grid, BandedMatrix matrix);

  Kind kind() const noexcept { return kind_; }
  const Grid& grid() const noexcept { return grid_; }
  bool is_hermitian() const noexcept { return hermitian_; }
  double hbar() const noexcept { return constants_.hbar; }
  const BandedMatrix* matrix() const noexcept { return matrix_ ? &*matrix_ : nullptr; }

  WaveFunction apply(const WaveFunction& psi) const;

 private:
  LinearOperator(Kind kind, Grid grid) : kind_(kind), grid_(grid) {}

  Kind kind_;
  Grid grid_;
  bool hermitian_ = true;
  PhysicalConstants constants_ = PhysicalConstants::natural();
  std::optional<DiscreteHamiltonian> hamiltonian_;
  std::optional<BandedMatrix> matrix_;
};

/// Tolerance on |norm - 1| before expectation values emit a warning.
inline constexpr double kNormWarningTolerance = 1e-8;

/// <psi|A psi>. Momentum uses the p-space moment int dp p |phi|^2.
complex expectation(const LinearOperator& op, const WaveFunction& psi, Warnings* warnings = nullptr);

/// int dp p |phi(p)|^2
double momentum_expectation_pspace(const WaveFunction& psi, const PhysicalConstants& constants);
/// int dx conj(psi) (hbar/i) dpsi/dx with central differences.
double momentum_expectation_xspace(const WaveFunction& psi, const PhysicalConstants& constants);

/// sqrt(<(A - <A>)^2>). Non-Hermitian operators are rejected.
double uncertainty(const LinearOperator& op, const WaveFunction& psi);

/// <psi|[A, B] psi>
complex commutator_expectation(const LinearOperator& a, const LinearOperator& b,
                               const WaveFunction& psi);

struct UncertaintyReport {
  double lhs;          // Delta A * Delta B
  double rhs;          // |<[A, B]>| / 2
  complex commutator;  // <[A, B]>; purely imaginary for Hermitian A, B
  bool satisfied;
};

inline constexpr double kBoundSlack = 1e-10;

UncertaintyReport uncertainty_bound_check(const LinearOperator& a, const LinearOperator& b,
                                          const WaveFunction& psi);

}  // namespace qm1d

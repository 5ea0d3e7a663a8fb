#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qm1d/core.hpp"
#include "qm1d/potentials.hpp"
#include "qm1d/spectral.hpp"
#include "qm1d/tridiagonal.hpp"

namespace qm1d {

/// Three-point finite-difference Hamiltonian
///   (H psi)_i = -hbar^2/(2 m dx^2) (psi_{i+1} - 2 psi_i + psi_{i-1}) + V_i psi_i
/// restricted to the active (unmasked) nodes. The two grid endpoints are
/// always Dirichlet nodes, so psi = 0 there.
class DiscreteHamiltonian {
 public:
  const Grid& grid() const noexcept { return grid_; }
  double mass() const noexcept { return mass_; }
  double hbar() const noexcept { return hbar_; }
  /// hbar^2 / (2 m dx^2)
  double kinetic_coefficient() const noexcept { return kinetic_; }

  /// Grid indices of the active nodes, ascending.
  const std::vector<std::size_t>& active() const noexcept { return active_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }
  const RealVector& potential() const noexcept { return potential_; }
  /// Matrix over the active nodes.
  const SymmetricTridiagonal& matrix() const noexcept { return matrix_; }

  /// Whether the box edge truncates an unbounded potential on that side.
  bool truncated_left() const noexcept { return truncated_left_; }
  bool truncated_right() const noexcept { return truncated_right_; }

  /// H applied to a full-grid vector; masked entries of the result are 0.
  ComplexVector apply(std::span<const complex> psi) const;
  WaveFunction apply(const WaveFunction& psi) const;

 private:
  friend DiscreteHamiltonian build_hamiltonian(const Grid&, const Potential&, double,
                                               const PhysicalConstants&);
  Grid grid_ = make_grid(0.0, 1.0, 8);
  double mass_ = 1.0;
  double hbar_ = 1.0;
  double kinetic_ = 0.0;
  std::vector<std::size_t> active_;
  std::vector<bool> mask_;
  RealVector potential_;
  SymmetricTridiagonal matrix_;
  bool truncated_left_ = false;
  bool truncated_right_ = false;
};

DiscreteHamiltonian build_hamiltonian(const Grid& grid, const Potential& potential, double mass,
                                      const PhysicalConstants& constants);

struct Spectrum {
  RealVector energies;              // ascending
  std::vector<WaveFunction> states; // normalized, first lobe positive
  RealVector residuals;             // ||H psi - E psi|| / ||psi||
  Warnings warnings;
  bool extrapolated = false;
};

/// Amplitude a truncated box edge may carry in a returned state.
inline constexpr double kBoxEdgeLimit = 1e-12;

/// The `count` lowest eigenpairs of H.
Spectrum solve_bound_states(const DiscreteHamiltonian& H, std::size_t count);

/// Richardson extrapolation of two three-point solves (dx and dx/2):
/// E = (4 E_{dx/2} - E_dx) / 3, states combined the same way on the coarse
/// nodes and renormalized. Removes the O(dx^2) error term.
Spectrum solve_extrapolated(const Grid& grid, const Potential& potential, double mass,
                            const PhysicalConstants& constants, std::size_t count);

/// Sign changes of a real-valued state, ignoring samples below
/// `threshold * max|psi|`.
std::size_t count_nodes(const WaveFunction& psi, double threshold = 1e-8);

}  // namespace qm1d

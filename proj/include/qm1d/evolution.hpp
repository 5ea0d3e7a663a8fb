#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qm1d/core.hpp"
#include "qm1d/eigensolver.hpp"
#include "qm1d/potentials.hpp"
#include "qm1d/spectral.hpp"

namespace qm1d {

enum class Method { crank_nicolson, split_step };

struct EvolutionConfig {
  double dt = 1e-3;
  std::size_t steps = 1;
  Method method = Method::crank_nicolson;
  /// Snapshot cadence in steps. The final step is always recorded.
  std::size_t observables_every = 1;
};

/// Throws ErrorKind::configuration for dt <= 0 or observables_every == 0.
void validate(const EvolutionConfig& config);

struct ObservableSample {
  double norm;
  double mean_x;
  double mean_p;
  double delta_x;
  double delta_p;
  double energy;
};

struct Trajectory {
  RealVector times;
  std::vector<WaveFunction> snapshots;
  std::vector<ObservableSample> observables;
};

/// Cayley step (1 + i H dt / 2hbar) psi' = (1 - i H dt / 2hbar) psi.
/// Masked nodes of H come out as 0. Any real dt is accepted, so negative
/// steps run the propagator backwards.
WaveFunction crank_nicolson_step(const WaveFunction& psi, const DiscreteHamiltonian& H, double dt,
                                 const PhysicalConstants& constants);

/// Strang splitting: exp(-iV dt/2hbar) exp(-iT dt/hbar) exp(-iV dt/2hbar)
/// with the kinetic factor applied in momentum space.
WaveFunction split_step(const WaveFunction& psi, const Potential& potential, double dt, double mass,
                        const PhysicalConstants& constants);

/// Crank-Nicolson propagator with the factorization of the left-hand
/// matrix cached for a fixed (H, dt).
class CrankNicolson {
 public:
  CrankNicolson(DiscreteHamiltonian H, double dt);
  const DiscreteHamiltonian& hamiltonian() const noexcept { return H_; }
  WaveFunction step(const WaveFunction& psi) const;

 private:
  DiscreteHamiltonian H_;
  double dt_;
  complex half_;                 // i dt / 2hbar
  std::vector<complex> c_prime_; // forward-eliminated super-diagonal
  std::vector<complex> pivot_;   // forward-eliminated diagonal
};

/// Split-step propagator with phase tables and FFT plan cached for a
/// fixed (grid, V, dt).
class SplitStep {
 public:
  SplitStep(const Grid& grid, const Potential& potential, double dt, double mass,
            const PhysicalConstants& constants);
  const RealVector& potential() const noexcept { return potential_; }
  WaveFunction step(const WaveFunction& psi) const;

 private:
  Grid grid_;
  RealVector potential_;
  FourierPlan plan_;
  ComplexVector half_potential_phase_;
  ComplexVector kinetic_phase_;  // in FFT order
};

/// Propagates psi0 for config.steps steps. steps = 0 yields the initial
/// state only. Step errors carry the step index in their message.
Trajectory evolve(const WaveFunction& psi0, const Potential& potential, const EvolutionConfig& config,
                  double mass, const PhysicalConstants& constants);

}  // namespace qm1d

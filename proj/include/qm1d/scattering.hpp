#pragma once

#include <complex>
#include <vector>

#include "qm1d/analytic.hpp"
#include "qm1d/core.hpp"
#include "qm1d/potentials.hpp"

namespace qm1d {

using analytic::ScatteringResult;

/// Solution of psi'' = -q^2 psi in one constant-potential region:
///   psi(x) = forward e^{i q (x - origin)} + backward e^{-i q (x - origin)}
/// with q^2 = 2 m (E - V) / hbar^2 (q = i kappa under the barrier). When
/// E == V the region is linear and `forward`/`backward` hold psi(origin)
/// and psi'(origin).
struct RegionWave {
  double x_start;  // -inf for the incident region
  double x_end;    // +inf for the transmitted region
  double V;
  complex wavenumber;
  double origin;
  complex forward;
  complex backward;
  bool linear = false;

  complex value(double x) const;
  complex slope(double x) const;
};

struct ScatteringSolution {
  ScatteringResult result;
  std::vector<double> interfaces;  // ascending interface positions
  std::vector<RegionWave> regions; // interfaces.size() + 1 regions, left to right
  /// log of the largest amplitude growth absorbed by renormalization
  double log_scale = 0.0;

  complex value(double x) const;
  complex slope(double x) const;
};

/// Piecewise-constant description of a scattering potential. Accepts
/// Barrier and PiecewiseConstant; anything else is unsupported.
struct Stack {
  std::vector<double> interfaces;
  std::vector<double> levels;  // interfaces.size() + 1 values, left to right
};

Stack scattering_stack(const Potential& potential);

/// Reverses the stack about the origin (x -> -x), for right incidence.
Stack mirrored(const Stack& stack);

/// Transfer-matrix solution with unit incidence from the left. Interfaces
/// impose continuity of psi and psi'.
ScatteringSolution solve_scattering(const Stack& stack, double E, double mass,
                                    const PhysicalConstants& constants);
ScatteringSolution solve_scattering(const Potential& potential, double E, double mass,
                                    const PhysicalConstants& constants);

ScatteringResult transfer_scattering(const Potential& potential, double E, double mass,
                                     const PhysicalConstants& constants);

struct SweepRow {
  double energy;
  double prob_R;
  double prob_T;
  double phase_R;
  double phase_T;
  complex R;
  complex T;
};

/// One row per energy, in input order. A failing row is rethrown with its
/// index in the message.
std::vector<SweepRow> transmission_sweep(const Potential& potential, std::span<const double> energies,
                                         double mass, const PhysicalConstants& constants);

}  // namespace qm1d

#include "qm1d/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qm1d/errors.hpp"

namespace qm1d {

DiscreteHamiltonian build_hamiltonian(const Grid& grid, const Potential& potential, double mass,
                                      const PhysicalConstants& constants) {
  require(mass > 0.0, ErrorKind::parameter, "Hamiltonian requires mass > 0");
  const SampledPotential sampled = sample_on_grid(potential, grid);
  const std::size_t n = grid.size();

  DiscreteHamiltonian H;
  H.grid_ = grid;
  H.mass_ = mass;
  H.hbar_ = constants.hbar;
  H.kinetic_ = constants.hbar * constants.hbar / (2.0 * mass * grid.dx() * grid.dx());
  H.mask_ = sampled.mask;
  H.mask_.front() = true;
  H.mask_.back() = true;
  H.potential_ = sampled.values;

  for (std::size_t i = 0; i < n; ++i) {
    if (!H.mask_[i]) H.active_.push_back(i);
  }
  require(!H.active_.empty(), ErrorKind::configuration, "no interior grid point is accessible");

  const std::size_t m = H.active_.size();
  H.matrix_.diagonal.resize(m);
  H.matrix_.off_diagonal.resize(m > 0 ? m - 1 : 0);
  for (std::size_t k = 0; k < m; ++k) {
    H.matrix_.diagonal[k] = 2.0 * H.kinetic_ + sampled.values[H.active_[k]];
    if (k + 1 < m) {
      const bool adjacent = H.active_[k + 1] == H.active_[k] + 1;
      H.matrix_.off_diagonal[k] = adjacent ? -H.kinetic_ : 0.0;
    }
  }
  H.truncated_left_ = potential.unbounded_left();
  H.truncated_right_ = potential.unbounded_right();
  return H;
}

ComplexVector DiscreteHamiltonian::apply(std::span<const complex> psi) const {
  require(psi.size() == grid_.size(), ErrorKind::shape, "state size differs from Hamiltonian grid");
  const std::size_t n = psi.size();
  ComplexVector out(n, complex(0.0));
  for (std::size_t i : active_) {
    complex neighbours = 0.0;
    if (!mask_[i - 1]) neighbours += psi[i - 1];
    if (!mask_[i + 1]) neighbours += psi[i + 1];
    out[i] = (2.0 * kinetic_ + potential_[i]) * psi[i] - kinetic_ * neighbours;
  }
  return out;
}

WaveFunction DiscreteHamiltonian::apply(const WaveFunction& psi) const {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "Hamiltonian acts on position-space states");
  require(psi.grid() == grid_, ErrorKind::shape, "state grid differs from Hamiltonian grid");
  return psi.with_amplitudes(apply(psi.amplitudes()));
}

namespace {

// Sign of the first lobe: first sample exceeding 1e-3 of the peak.
void fix_sign(RealVector& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-3 * peak) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace

Spectrum solve_bound_states(const DiscreteHamiltonian& H, std::size_t count) {
  const std::size_t m = H.active().size();
  require(count >= 1, ErrorKind::parameter, "at least one bound state must be requested");
  require(count <= m, ErrorKind::parameter,
          "requested " + std::to_string(count) + " states but only " + std::to_string(m) +
              " interior points are active");

  const auto pairs = lowest_eigenpairs(H.matrix(), count);
  const Grid& grid = H.grid();
  const double scale = 1.0 / std::sqrt(grid.dx());
  const double norm = H.matrix().norm_inf();
  const double tolerance = 1e-10 * std::max(norm, 1.0);

  Spectrum spec;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Eigenpair& pair = pairs[k];
    if (!(pair.residual <= tolerance)) {
      std::ostringstream msg;
      msg << "eigenpair " << k << " did not converge: residual " << pair.residual
          << " exceeds " << tolerance;
      fail(ErrorKind::solver, msg.str());
    }
    if (k > 0) {
      const double gap = pair.value - spec.energies.back();
      if (gap < 1e-10 * std::max(1.0, std::abs(pair.value))) {
        std::ostringstream msg;
        msg << "near-degenerate levels " << k - 1 << " and " << k << " (spacing " << gap << ")";
        spec.warnings.push_back(msg.str());
      }
    }

    RealVector v = pair.vector;
    fix_sign(v);
    ComplexVector amplitudes(grid.size(), complex(0.0));
    for (std::size_t j = 0; j < m; ++j) amplitudes[H.active()[j]] = v[j] * scale;
    WaveFunction state(grid, std::move(amplitudes));

    const std::size_t first = H.active().front();
    const std::size_t last = H.active().back();
    if ((H.truncated_left() && std::abs(state[first]) >= kBoxEdgeLimit) ||
        (H.truncated_right() && std::abs(state[last]) >= kBoxEdgeLimit)) {
      std::ostringstream msg;
      msg << "state " << k << " reaches the box edge (|psi| = "
          << std::max(std::abs(state[first]), std::abs(state[last]))
          << "); enlarge the domain";
      fail(ErrorKind::configuration, msg.str());
    }

    spec.energies.push_back(pair.value);
    spec.residuals.push_back(pair.residual);
    spec.states.push_back(std::move(state));
  }
  return spec;
}

Spectrum solve_extrapolated(const Grid& grid, const Potential& potential, double mass,
                            const PhysicalConstants& constants, std::size_t count) {
  const Grid fine = make_grid(grid.x_min(), grid.x_max(), 2 * grid.size() - 1);
  const Spectrum coarse_spec = solve_bound_states(build_hamiltonian(grid, potential, mass, constants), count);
  const Spectrum fine_spec = solve_bound_states(build_hamiltonian(fine, potential, mass, constants), count);

  Spectrum out;
  out.extrapolated = true;
  out.warnings = coarse_spec.warnings;
  out.warnings.insert(out.warnings.end(), fine_spec.warnings.begin(), fine_spec.warnings.end());
  for (std::size_t k = 0; k < count; ++k) {
    out.energies.push_back((4.0 * fine_spec.energies[k] - coarse_spec.energies[k]) / 3.0);
    out.residuals.push_back(std::max(coarse_spec.residuals[k], fine_spec.residuals[k]));

    const WaveFunction& c = coarse_spec.states[k];
    const WaveFunction& f = fine_spec.states[k];
    double overlap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) overlap += std::real(c[i] * std::conj(f[2 * i]));
    const double sign = overlap < 0.0 ? -1.0 : 1.0;
    ComplexVector combined(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      combined[i] = (4.0 * sign * f[2 * i] - c[i]) / 3.0;
    }
    out.states.push_back(normalize(WaveFunction(grid, std::move(combined))));
  }
  return out;
}

std::size_t count_nodes(const WaveFunction& psi, double threshold) {
  double peak = 0.0;
  for (const auto& v : psi.amplitudes()) peak = std::max(peak, std::abs(v));
  const double floor = threshold * peak;
  std::size_t nodes = 0;
  int last_sign = 0;
  for (const auto& v : psi.amplitudes()) {
    const double x = std::real(v);
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++nodes;
    last_sign = s;
  }
  return nodes;
}

}  // namespace qm1d

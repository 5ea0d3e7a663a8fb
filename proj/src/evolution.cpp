#include "qm1d/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qm1d/errors.hpp"
#include "qm1d/observables.hpp"

namespace qm1d {

void validate(const EvolutionConfig& config) {
  require(std::isfinite(config.dt) && config.dt > 0.0, ErrorKind::configuration,
          "evolution requires dt > 0");
  require(config.observables_every >= 1, ErrorKind::configuration,
          "observables_every must be at least 1");
}

CrankNicolson::CrankNicolson(DiscreteHamiltonian H, double dt)
    : H_(std::move(H)), dt_(dt), half_(0.0, 0.5 * dt / H_.hbar()) {
  require(std::isfinite(dt), ErrorKind::parameter, "time step must be finite");
  const SymmetricTridiagonal& t = H_.matrix();
  const std::size_t m = t.diagonal.size();
  c_prime_.assign(m, complex(0.0));
  pivot_.assign(m, complex(0.0));
  // Thomas elimination of A = I + half * H. No pivoting: A is diagonally
  // dominant in modulus for Hermitian H.
  for (std::size_t k = 0; k < m; ++k) {
    const complex diag = 1.0 + half_ * t.diagonal[k];
    const complex sub = k > 0 ? half_ * t.off_diagonal[k - 1] : complex(0.0);
    pivot_[k] = k > 0 ? diag - sub * c_prime_[k - 1] : diag;
    if (std::abs(pivot_[k]) == 0.0 || !std::isfinite(std::abs(pivot_[k]))) {
      fail(ErrorKind::solver, "singular Crank-Nicolson system");
    }
    if (k + 1 < m) c_prime_[k] = half_ * t.off_diagonal[k] / pivot_[k];
  }
}

WaveFunction CrankNicolson::step(const WaveFunction& psi) const {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "Crank-Nicolson acts on position-space states");
  require(psi.grid() == H_.grid(), ErrorKind::shape, "state grid differs from Hamiltonian grid");
  const SymmetricTridiagonal& t = H_.matrix();
  const auto& active = H_.active();
  const std::size_t m = active.size();

  std::vector<complex> rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    complex h = t.diagonal[k] * psi[active[k]];
    if (k > 0) h += t.off_diagonal[k - 1] * psi[active[k - 1]];
    if (k + 1 < m) h += t.off_diagonal[k] * psi[active[k + 1]];
    rhs[k] = psi[active[k]] - half_ * h;
  }
  for (std::size_t k = 0; k < m; ++k) {
    const complex sub = k > 0 ? half_ * t.off_diagonal[k - 1] : complex(0.0);
    rhs[k] = (rhs[k] - (k > 0 ? sub * rhs[k - 1] : complex(0.0))) / pivot_[k];
  }
  for (std::size_t k = m - 1; k-- > 0;) rhs[k] -= c_prime_[k] * rhs[k + 1];

  ComplexVector out(psi.size(), complex(0.0));
  for (std::size_t k = 0; k < m; ++k) out[active[k]] = rhs[k];
  return psi.with_amplitudes(std::move(out));
}

WaveFunction crank_nicolson_step(const WaveFunction& psi, const DiscreteHamiltonian& H, double dt,
                                 const PhysicalConstants& constants) {
  require(std::abs(constants.hbar - H.hbar()) <= 1e-15 * std::abs(H.hbar()), ErrorKind::parameter,
          "constants differ from those the Hamiltonian was built with");
  return CrankNicolson(H, dt).step(psi);
}

namespace {

RealVector smooth_potential(const Potential& potential, const Grid& grid) {
  const SampledPotential sampled = sample_on_grid(potential, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (sampled.mask[i] || !std::isfinite(sampled.values[i])) {
      fail(ErrorKind::unsupported,
           "split-step needs a finite potential on the whole grid; use crank_nicolson for hard walls");
    }
  }
  return sampled.values;
}

void guard_edges(const WaveFunction& psi) {
  const double edge = edge_amplitude(psi);
  if (edge >= kEdgeAmplitudeLimit) {
    std::ostringstream msg;
    msg << "wave packet reached the grid edge (relative amplitude " << edge
        << "); periodic wrap would corrupt the split-step result";
    fail(ErrorKind::edge_escape, msg.str());
  }
}

}  // namespace

SplitStep::SplitStep(const Grid& grid, const Potential& potential, double dt, double mass,
                     const PhysicalConstants& constants)
    : grid_(grid), potential_(smooth_potential(potential, grid)), plan_(grid.size()) {
  require(std::isfinite(dt), ErrorKind::parameter, "time step must be finite");
  require(mass > 0.0, ErrorKind::parameter, "split-step requires mass > 0");
  const std::size_t n = grid.size();
  const double hbar = constants.hbar;
  half_potential_phase_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    half_potential_phase_[i] = std::polar(1.0, -0.5 * potential_[i] * dt / hbar);
  }
  const MomentumGrid mg = momentum_grid(grid, constants);
  const std::size_t shift = n / 2;
  kinetic_phase_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double p = mg.p((k + shift) % n);
    kinetic_phase_[k] = std::polar(1.0, -p * p * dt / (2.0 * mass * hbar)) / static_cast<double>(n);
  }
}

WaveFunction SplitStep::step(const WaveFunction& psi) const {
  require(psi.space() == Space::position, ErrorKind::space_tag,
          "split-step acts on position-space states");
  require(psi.grid() == grid_, ErrorKind::shape, "state grid differs from propagator grid");
  guard_edges(psi);
  const std::size_t n = psi.size();
  ComplexVector work(psi.amplitudes().begin(), psi.amplitudes().end());
  for (std::size_t i = 0; i < n; ++i) work[i] *= half_potential_phase_[i];
  plan_.forward(work);
  for (std::size_t k = 0; k < n; ++k) work[k] *= kinetic_phase_[k];
  plan_.backward(work);
  for (std::size_t i = 0; i < n; ++i) work[i] *= half_potential_phase_[i];
  WaveFunction out = psi.with_amplitudes(std::move(work));
  guard_edges(out);
  return out;
}

WaveFunction split_step(const WaveFunction& psi, const Potential& potential, double dt, double mass,
                        const PhysicalConstants& constants) {
  return SplitStep(psi.grid(), potential, dt, mass, constants).step(psi);
}

namespace {

ObservableSample measure(const WaveFunction& psi, Method method, const CrankNicolson* cn,
                         const RealVector* potential, double mass,
                         const PhysicalConstants& constants) {
  const LinearOperator x = LinearOperator::position(psi.grid());
  const LinearOperator p = LinearOperator::momentum(psi.grid(), constants);
  ObservableSample s{};
  s.norm = norm_squared(psi);
  s.mean_x = std::real(expectation(x, psi));
  s.mean_p = momentum_expectation_pspace(psi, constants);
  s.delta_x = uncertainty(x, psi);
  s.delta_p = uncertainty(p, psi);
  if (method == Method::crank_nicolson) {
    s.energy = std::real(inner_product(psi, cn->hamiltonian().apply(psi)));
  } else {
    double v = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) v += psi.weight(i) * std::norm(psi[i]) * (*potential)[i];
    const double p2 = s.delta_p * s.delta_p + s.mean_p * s.mean_p;
    s.energy = p2 / (2.0 * mass) + v;
  }
  return s;
}

}  // namespace

Trajectory evolve(const WaveFunction& psi0, const Potential& potential, const EvolutionConfig& config,
                  double mass, const PhysicalConstants& constants) {
  validate(config);
  require(psi0.space() == Space::position, ErrorKind::space_tag,
          "evolution starts from a position-space state");
  const Grid& grid = psi0.grid();

  std::optional<CrankNicolson> cn;
  std::optional<SplitStep> ss;
  if (config.method == Method::crank_nicolson) {
    cn.emplace(build_hamiltonian(grid, potential, mass, constants), config.dt);
  } else {
    ss.emplace(grid, potential, config.dt, mass, constants);
  }

  const CrankNicolson* cn_ptr = cn ? &*cn : nullptr;
  const RealVector* v_ptr = ss ? &ss->potential() : nullptr;

  Trajectory traj;
  auto record = [&](std::size_t step, const WaveFunction& psi) {
    traj.times.push_back(static_cast<double>(step) * config.dt);
    traj.snapshots.push_back(psi);
    traj.observables.push_back(measure(psi, config.method, cn_ptr, v_ptr, mass, constants));
  };

  WaveFunction psi = psi0;
  record(0, psi);
  for (std::size_t step = 1; step <= config.steps; ++step) {
    try {
      psi = cn ? cn->step(psi) : ss->step(psi);
    } catch (const Error& e) {
      fail(e.kind(), "step " + std::to_string(step) + ": " + e.what());
    }
    if (step % config.observables_every == 0 || step == config.steps) record(step, psi);
  }
  return traj;
}

}  // namespace qm1d

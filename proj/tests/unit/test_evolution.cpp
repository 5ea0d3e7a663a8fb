#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qm1d/analytic.hpp"
#include "qm1d/errors.hpp"
#include "qm1d/evolution.hpp"
#include "qm1d/observables.hpp"

using namespace qm1d;
using std::numbers::pi;

namespace {

const auto nat = PhysicalConstants::natural();

WaveFunction gaussian(const Grid& g, double alpha, double k0, double x0 = 0.0) {
  const auto p = analytic::packet_params(alpha, k0, nat);
  return normalize(sample(g, [&](double x) { return analytic::gaussian_packet_x(p, x - x0); }));
}

double max_diff(const WaveFunction& a, const WaveFunction& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::solver;
}

}  // namespace

TEST_CASE("crank-nicolson eigenstate picks up the discrete phase") {
  const Grid g = make_grid(0, 1, 801);
  const auto H = build_hamiltonian(g, Potential::infinite_well(1), 1.0, nat);
  const auto s = solve_bound_states(H, 3);
  const double dt = 1e-3;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto next = crank_nicolson_step(s.states[k], H, dt, nat);
    // Cayley phase of the discrete eigenvalue
    const complex z(0, 0.5 * s.energies[k] * dt);
    const complex factor = (1.0 - z) / (1.0 + z);
    ComplexVector expect(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) expect[i] = factor * s.states[k][i];
    CHECK(max_diff(next, s.states[k].with_amplitudes(expect)) < 1e-10);
    CHECK(std::abs(norm_squared(next) - norm_squared(s.states[k])) < 1e-13);
    // and the exact phase to second order in dt
    CHECK(std::abs(factor - std::polar(1.0, -s.energies[k] * dt)) < std::pow(s.energies[k] * dt, 3));
  }
}

TEST_CASE("zero step is the identity") {
  const Grid g = make_grid(-10, 10, 512);
  const auto psi = gaussian(g, 0.5, 1.0);  // edges below the Dirichlet cut
  const auto H = build_hamiltonian(g, Potential::harmonic(1), 1.0, nat);
  CHECK(max_diff(crank_nicolson_step(psi, H, 0.0, nat), psi) < 1e-15);
  CHECK(max_diff(split_step(psi, Potential::harmonic(1), 0.0, 1.0, nat), psi) < 1e-14);
}

TEST_CASE("crank-nicolson time reversal") {
  const Grid g = make_grid(-10, 10, 1024);
  const auto psi = gaussian(g, 0.5, 2.0);
  const auto H = build_hamiltonian(g, Potential::harmonic(0.3), 1.0, nat);
  const auto there = CrankNicolson(H, 0.01).step(psi);
  const auto back = CrankNicolson(H, -0.01).step(there);
  CHECK(max_diff(back, psi) < 1e-10);
}

TEST_CASE("unitarity over many steps") {
  // the squeezed packet breathes out to alpha = 2, so the box must hold that tail
  const Grid g = make_grid(-25, 25, 2048);
  const auto psi = gaussian(g, 0.5, 1.0);
  const auto H = build_hamiltonian(g, Potential::harmonic(0.5), 1.0, nat);
  const CrankNicolson cn(H, 1e-3);
  const SplitStep ss(g, Potential::harmonic(0.5), 1e-3, 1.0, nat);
  auto a = psi, b = psi;
  double worst_cn = 0, worst_ss = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto na = cn.step(a);
    const auto nb = ss.step(b);
    worst_cn = std::max(worst_cn, std::abs(norm_squared(na) - norm_squared(a)));
    worst_ss = std::max(worst_ss, std::abs(norm_squared(nb) - norm_squared(b)));
    a = na;
    b = nb;
  }
  CHECK(worst_cn < 1e-13);
  CHECK(worst_ss < 1e-12);
  CHECK(std::abs(norm_squared(a) - 1) < 1e-9);
  CHECK(std::abs(norm_squared(b) - 1) < 1e-9);
}

TEST_CASE("energy is conserved") {
  const Grid g = make_grid(-15, 15, 1024);
  const auto psi = gaussian(g, 0.5, 1.0, 1.0);
  for (Method m : {Method::crank_nicolson, Method::split_step}) {
    EvolutionConfig cfg{m == Method::split_step ? 1e-4 : 1e-3, 2000, m, 100};
    const auto traj = evolve(psi, Potential::harmonic(1.0), cfg, 1.0, nat);
    const double e0 = traj.observables.front().energy;
    double drift = 0;
    for (const auto& o : traj.observables) drift = std::max(drift, std::abs(o.energy - e0) / std::abs(e0));
    MESSAGE("energy drift " << drift);
    CHECK(drift < 1e-8);
  }
}

TEST_CASE("free gaussian spreading under split-step") {
  const Grid g = make_grid(-40, 60, 2048);
  const auto params = analytic::packet_params(1.0, 5.0, nat);
  const auto psi = gaussian(g, 1.0, 5.0);
  EvolutionConfig cfg{0.01, 200, Method::split_step, 20};
  const auto traj = evolve(psi, Potential::free(), cfg, 1.0, nat);
  CHECK(traj.times.size() == 11);
  const double dp0 = traj.observables.front().delta_p;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const auto& o = traj.observables[i];
    CHECK(std::abs(o.delta_x / analytic::packet_sigma_x(params, t) - 1) < 1e-3);
    CHECK(std::abs(o.mean_x - params.group_velocity() * t) < 1e-6);
    CHECK(std::abs(o.delta_p - dp0) < 1e-8);
    // product grows with the analytic form
    const double r = params.beta() * t / params.alpha;
    CHECK(o.delta_x * o.delta_p == doctest::Approx(0.5 * std::sqrt(1 + r * r)).epsilon(1e-6));
  }
}

TEST_CASE("harmonic oscillation follows the classical orbit") {
  const Grid g = make_grid(-12, 12, 1024);
  const double x0 = 2.0;
  // coherent width for m = w = hbar = 1: |psi|^2 ~ exp(-x^2), alpha = 1/2
  const auto psi = gaussian(g, 0.5, 0.0, x0);
  EvolutionConfig cfg{1e-3, 6284, Method::split_step, 100};
  const auto traj = evolve(psi, Potential::harmonic(1.0), cfg, 1.0, nat);
  double worst = 0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const double classical = oracle::hamilton_oscillator_x(x0, 0.0, 1.0, 1.0, t, 4000);
    worst = std::max(worst, std::abs(traj.observables[i].mean_x - classical));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("methods agree on a free gaussian") {
  // the gap is the stencil's dispersion error, so it closes as dx^2
  auto gap = [](std::size_t n) {
    const Grid g = make_grid(-20, 30, n);
    const auto psi = gaussian(g, 1.0, 2.0);
    EvolutionConfig cn{1e-3, 1000, Method::crank_nicolson, 1000};
    EvolutionConfig ss{1e-3, 1000, Method::split_step, 1000};
    const auto a = evolve(psi, Potential::free(), cn, 1.0, nat).snapshots.back();
    const auto b = evolve(psi, Potential::free(), ss, 1.0, nat).snapshots.back();
    return max_diff(a, b);
  };
  const double coarse = gap(4001), fine = gap(8001);
  MESSAGE("cn vs split-step " << coarse << " -> " << fine);
  CHECK(coarse < 2e-4);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("stationary eigenstates") {
  const Grid g = make_grid(0, 1, 1001);
  const auto H = build_hamiltonian(g, Potential::infinite_well(1), 1.0, nat);
  const auto s = solve_bound_states(H, 2);
  EvolutionConfig cfg{1e-4, 1000, Method::crank_nicolson, 10};
  const auto traj = evolve(s.states[1], Potential::infinite_well(1), cfg, 1.0, nat);
  const auto& o0 = traj.observables.front();
  for (const auto& o : traj.observables) {
    CHECK(std::abs(o.mean_x - o0.mean_x) < 1e-8);
    CHECK(std::abs(o.mean_p - o0.mean_p) < 1e-8);
    CHECK(std::abs(o.delta_x - o0.delta_x) < 1e-8);
  }
}

TEST_CASE("trajectory cadence") {
  const Grid g = make_grid(-10, 10, 256);
  const auto psi = gaussian(g, 1.0, 0.0);
  const auto only = evolve(psi, Potential::free(), {0.01, 0, Method::split_step, 1}, 1.0, nat);
  CHECK(only.times.size() == 1);
  CHECK(only.snapshots.size() == 1);
  CHECK(max_diff(only.snapshots[0], psi) == 0.0);
  const auto t = evolve(psi, Potential::free(), {0.01, 10, Method::crank_nicolson, 4}, 1.0, nat);
  CHECK(t.times == RealVector{0.0, 0.04, 0.08, 0.1});
}

TEST_CASE("configuration and method errors") {
  const Grid g = make_grid(-1, 2, 256);
  const auto psi = gaussian(g, 0.01, 0.0, 0.5);
  CHECK(kind_of([&] { evolve(psi, Potential::free(), {0.0, 1, Method::crank_nicolson, 1}, 1, nat); }) ==
        ErrorKind::configuration);
  CHECK(kind_of([&] { evolve(psi, Potential::free(), {0.1, 1, Method::crank_nicolson, 0}, 1, nat); }) ==
        ErrorKind::configuration);
  CHECK(kind_of([&] { split_step(psi, Potential::infinite_well(1), 1e-3, 1, nat); }) == ErrorKind::unsupported);
  // well eigenstates under CN are fine
  CHECK_NOTHROW(evolve(psi, Potential::infinite_well(1), {1e-4, 3, Method::crank_nicolson, 1}, 1, nat));
}

TEST_CASE("edge guard") {
  const Grid g = make_grid(-10, 10, 512);
  const auto psi = gaussian(g, 1.0, 20.0, 5.0);
  try {
    evolve(psi, Potential::free(), {0.01, 200, Method::split_step, 1}, 1.0, nat);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::edge_escape);
    CHECK(std::string(e.what()).rfind("step ", 0) == 0);
  }
}

#include "qm1d/scattering.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <cmath>
#include <sstream>

#include "qm1d/errors.hpp"

namespace qm1d {

namespace {

const complex I(0.0, 1.0);

bool at_step_level(double E, double V) {
  return std::abs(E - V) <= analytic::kStepLimitTolerance * std::max(std::abs(E), std::abs(V));
}

}  // namespace

complex RegionWave::value(double x) const {
  const double d = x - origin;
  if (linear) return forward + backward * d;
  return forward * std::exp(I * wavenumber * d) + backward * std::exp(-I * wavenumber * d);
}

complex RegionWave::slope(double x) const {
  const double d = x - origin;
  if (linear) return backward;
  return I * wavenumber *
         (forward * std::exp(I * wavenumber * d) - backward * std::exp(-I * wavenumber * d));
}

namespace {

const RegionWave& region_at(const std::vector<RegionWave>& regions, double x) {
  for (const RegionWave& r : regions) {
    if (x < r.x_end) return r;
  }
  return regions.back();
}

}  // namespace

complex ScatteringSolution::value(double x) const { return region_at(regions, x).value(x); }
complex ScatteringSolution::slope(double x) const { return region_at(regions, x).slope(x); }

Stack scattering_stack(const Potential& potential) {
  Stack stack;
  if (const auto* b = potential.get_if<Barrier>()) {
    stack.interfaces = {0.0, b->a};
    stack.levels = {0.0, b->V0, 0.0};
    return stack;
  }
  const auto* p = potential.get_if<PiecewiseConstant>();
  require(p != nullptr, ErrorKind::unsupported,
          "transfer matrices need a Barrier or PiecewiseConstant potential");

  struct Interval {
    double start;
    double end;
    double V;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Interval> cover;
  double cursor = -inf;
  for (const Segment& s : p->segments) {
    if (s.x_start > cursor) cover.push_back({cursor, s.x_start, 0.0});
    cover.push_back({s.x_start, s.x_end, s.V});
    cursor = s.x_end;
  }
  if (cursor < inf) cover.push_back({cursor, inf, 0.0});

  stack.levels.push_back(cover.front().V);
  for (std::size_t i = 1; i < cover.size(); ++i) {
    if (cover[i].V == stack.levels.back()) continue;
    stack.interfaces.push_back(cover[i].start);
    stack.levels.push_back(cover[i].V);
  }
  return stack;
}

Stack mirrored(const Stack& stack) {
  Stack out;
  out.interfaces.assign(stack.interfaces.rbegin(), stack.interfaces.rend());
  for (double& x : out.interfaces) x = -x;
  out.levels.assign(stack.levels.rbegin(), stack.levels.rend());
  return out;
}

ScatteringSolution solve_scattering(const Stack& stack, double E, double mass,
                                    const PhysicalConstants& constants) {
  require(E > 0.0 && std::isfinite(E), ErrorKind::parameter, "scattering requires E > 0");
  require(mass > 0.0, ErrorKind::parameter, "scattering requires mass > 0");
  require(stack.levels.size() == stack.interfaces.size() + 1, ErrorKind::shape,
          "stack needs one more level than interfaces");
  const double v_left = stack.levels.front();
  const double v_right = stack.levels.back();
  require(v_left == v_right, ErrorKind::unsupported,
          "asymptotic potentials differ; only equal asymptotes are supported");
  if (!(E > v_left)) {
    std::ostringstream msg;
    msg << "energy " << E << " does not exceed the asymptotic level " << v_left;
    fail(ErrorKind::evanescent, msg.str());
  }

  const double hbar2 = constants.hbar * constants.hbar;
  auto q_squared = [&](double V) { return 2.0 * mass * (E - V) / hbar2; };
  const double k = std::sqrt(q_squared(v_left));
  const auto& xs = stack.interfaces;
  const std::size_t N = xs.size();

  ScatteringSolution sol;
  sol.interfaces = xs;
  sol.result.energy = E;

  if (N == 0) {
    sol.result.R = 0.0;
    sol.result.T = 1.0;
    sol.result.prob_R = 0.0;
    sol.result.prob_T = 1.0;
    const double inf = std::numeric_limits<double>::infinity();
    sol.regions.push_back({-inf, inf, v_left, k, 0.0, 1.0, 0.0, false});
    return sol;
  }

  // Backward sweep from the transmitted side with T = 1; states[j] holds
  // (psi, psi') at interface j scaled by exp(-logs[j]).
  std::vector<std::array<complex, 2>> states(N);
  std::vector<double> logs(N, 0.0);
  complex psi = std::exp(I * (k * xs[N - 1]));
  complex dpsi = I * k * psi;
  states[N - 1] = {psi, dpsi};
  double log_scale = 0.0;
  for (std::size_t j = N - 1; j-- > 0;) {
    const double V = stack.levels[j + 1];
    const double L = xs[j + 1] - xs[j];
    const double q2 = q_squared(V);
    complex p0, d0;
    if (at_step_level(E, V)) {
      p0 = psi - L * dpsi;
      d0 = dpsi;
    } else if (q2 > 0.0) {
      const double q = std::sqrt(q2);
      const double c = std::cos(q * L);
      const double s = std::sin(q * L);
      p0 = c * psi - (s / q) * dpsi;
      d0 = q * s * psi + c * dpsi;
    } else {
      const double kappa = std::sqrt(-q2);
      const double th = std::tanh(kappa * L);
      p0 = psi - (th / kappa) * dpsi;
      d0 = -kappa * th * psi + dpsi;
      log_scale += kappa * L + std::log1p(std::exp(-2.0 * kappa * L)) - std::numbers::ln2;
    }
    const double size = std::abs(p0) + std::abs(d0) / k;
    psi = p0 / size;
    dpsi = d0 / size;
    log_scale += std::log(size);
    states[j] = {psi, dpsi};
    logs[j] = log_scale;
  }

  const double x0 = xs[0];
  const complex a_scaled = 0.5 * std::exp(-I * (k * x0)) * (psi + dpsi / (I * k));
  const complex b_scaled = 0.5 * std::exp(I * (k * x0)) * (psi - dpsi / (I * k));
  require(std::abs(a_scaled) > 0.0 && std::isfinite(std::abs(a_scaled)), ErrorKind::solver,
          "transfer sweep produced a vanishing incident amplitude");

  ScatteringResult& res = sol.result;
  res.R = b_scaled / a_scaled;
  res.T = std::exp(-logs[0]) / a_scaled;
  res.prob_R = std::norm(res.R);
  res.prob_T = std::norm(res.T);
  sol.log_scale = logs[0];

  const double inf = std::numeric_limits<double>::infinity();
  sol.regions.push_back({-inf, xs[0], v_left, k, 0.0, 1.0, res.R, false});
  for (std::size_t j = 0; j + 1 < N; ++j) {
    const double V = stack.levels[j + 1];
    const double factor = std::exp(logs[j] - logs[0]);
    const complex p = states[j][0] * factor / a_scaled;
    const complex d = states[j][1] * factor / a_scaled;
    RegionWave r{xs[j], xs[j + 1], V, std::sqrt(complex(q_squared(V))), xs[j], 0.0, 0.0, false};
    if (at_step_level(E, V)) {
      r.linear = true;
      r.wavenumber = 0.0;
      r.forward = p;
      r.backward = d;
    } else {
      r.forward = 0.5 * (p + d / (I * r.wavenumber));
      r.backward = 0.5 * (p - d / (I * r.wavenumber));
    }
    sol.regions.push_back(r);
  }
  sol.regions.push_back({xs[N - 1], inf, v_right, k, 0.0, res.T, 0.0, false});
  return sol;
}

ScatteringSolution solve_scattering(const Potential& potential, double E, double mass,
                                    const PhysicalConstants& constants) {
  ScatteringSolution sol = solve_scattering(scattering_stack(potential), E, mass, constants);
  if (const auto* b = potential.get_if<Barrier>(); b && sol.regions.size() == 3 &&
                                                   !sol.regions[1].linear) {
    // Interior coefficients in the global-origin form C e^{beta x} + C' e^{-beta x}.
    // Under the barrier q = i beta, so e^{i q x} = e^{-beta x} pairs with C';
    // above it q = k_B and e^{i q x} = e^{beta x} with beta = i k_B pairs with C.
    const RegionWave& mid = sol.regions[1];
    const bool evanescent = E < b->V0;
    sol.result.C = evanescent ? mid.backward : mid.forward;
    sol.result.C_prime = evanescent ? mid.forward : mid.backward;
  }
  return sol;
}

ScatteringResult transfer_scattering(const Potential& potential, double E, double mass,
                                     const PhysicalConstants& constants) {
  return solve_scattering(potential, E, mass, constants).result;
}

std::vector<SweepRow> transmission_sweep(const Potential& potential, std::span<const double> energies,
                                         double mass, const PhysicalConstants& constants) {
  const Stack stack = scattering_stack(potential);
  std::vector<SweepRow> rows;
  rows.reserve(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) {
    try {
      const ScatteringResult r = solve_scattering(stack, energies[i], mass, constants).result;
      rows.push_back({r.energy, r.prob_R, r.prob_T, std::arg(r.R), std::arg(r.T), r.R, r.T});
    } catch (const Error& e) {
      fail(e.kind(), "row " + std::to_string(i) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace qm1d

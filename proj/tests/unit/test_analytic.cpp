#include <doctest.h>

#include <cmath>
#include <tuple>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qm1d/analytic.hpp"
#include "qm1d/errors.hpp"

using namespace qm1d;
using namespace qm1d::analytic;
using std::numbers::pi;

namespace {
const auto nat = PhysicalConstants::natural();
}

TEST_CASE("gaussian packet at t = 0") {
  const auto p0 = packet_params(1.0, 0.0, nat);
  CHECK(std::abs(gaussian_packet_x(p0, 0.0) - std::sqrt(pi)) < 1e-15);
  for (double x : {0.3, 1.0, 2.5}) CHECK(gaussian_packet_x(p0, x) == gaussian_packet_x(p0, -x));
  const auto p3 = packet_params(1.0, 3.0, nat);
  CHECK(std::abs(gaussian_packet_x(p3, 1.0)) == doctest::Approx(std::abs(gaussian_packet_x(p0, 1.0))).epsilon(1e-15));
  CHECK_THROWS_AS(packet_params(0.0, 1.0, nat), Error);
  for (double x : {-1.0, 0.0, 0.7}) CHECK(std::abs(free_packet_xt(p3, x, 0.0) - gaussian_packet_x(p3, x)) < 1e-15);
}

TEST_CASE("free packet peak") {
  const auto p = packet_params(1.0, 1.0, nat);
  for (double t : {0.5, 2.0, 7.0}) {
    const double peak = std::norm(free_packet_xt(p, p.group_velocity() * t, t));
    const double b = p.beta();
    CHECK(peak == doctest::Approx(pi / std::sqrt(1 + b * b * t * t)).epsilon(1e-14));
  }
  // argmax at x = v_g t
  const double dx = 1e-3;
  double best_x = 0, best = -1;
  for (double x = -5; x < 10; x += dx) {
    const double v = std::norm(free_packet_xt(p, x, 2.0));
    if (v > best) best = v, best_x = x;
  }
  CHECK(std::abs(best_x - 2.0) <= dx);
}

TEST_CASE("packet width") {
  const auto p = packet_params(1.0, 2.0, nat);
  CHECK(packet_width(p, 0) == doctest::Approx(2 * std::sqrt(2.0)));
  for (double alpha : {0.1, 1.0, 5.0}) {
    const auto q = packet_params(alpha, 0, nat);
    CHECK(packet_wavenumber_width(q) * packet_width(q, 0) == doctest::Approx(4.0).epsilon(1e-15));
    for (double t : {0.0, 1.0, 10.0}) {
      const double r = q.beta() * t / alpha;
      const double product = packet_wavenumber_width(q) * packet_width(q, t);
      CHECK(product == doctest::Approx(4 * std::sqrt(1 + r * r)));
      CHECK(product >= 4.0);
    }
    const double t = 1e8;
    CHECK(packet_width(q, t) / t == doctest::Approx(2 * std::sqrt(2.0) * q.beta() / std::sqrt(alpha)).epsilon(1e-12));
  }
  // 1/e full width of |F|^2
  const double t = 3.0;
  const double half = packet_width(p, t) / 2;
  const double center = p.group_velocity() * t;
  const double ratio = std::norm(free_packet_xt(p, center + half, t)) / std::norm(free_packet_xt(p, center, t));
  CHECK(ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
  CHECK(packet_sigma_x(p, t) == doctest::Approx(half / std::sqrt(2.0)));
}

TEST_CASE("well levels") {
  CHECK(well_energy(1, 1, nat) == doctest::Approx(pi * pi / 2).epsilon(1e-15));
  CHECK(well_energy(2, 1, nat) / well_energy(1, 1, nat) == 4.0);
  const double e3 = well_energy(3, 1, nat);
  CHECK((well_energy(4, 1, nat) - e3) / e3 == doctest::Approx(7.0 / 9.0).epsilon(1e-15));
  CHECK_THROWS_AS(well_energy(0, 1, nat), Error);
  CHECK(well_state(1, 1, 0.5) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(well_state(2, 1, 0.5)) < 1e-15);
  CHECK(well_state(1, 1, -0.1) == 0.0);
  CHECK(well_state(1, 1, 1.1) == 0.0);
}

TEST_CASE("well states are orthonormal under quadrature") {
  const std::size_t n = 4001;
  const double a = 2.0, dx = a / (n - 1);
  for (int j = 1; j <= 5; ++j) {
    for (int k = j; k <= 5; ++k) {
      std::vector<double> f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = well_state(j, a, i * dx) * well_state(k, a, i * dx);
      CHECK(std::abs(oracle::trapezoid(f, dx) - (j == k ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("barrier closed form") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  for (int i = 0; i < 100; ++i) {
    const auto r = barrier_scattering(u(rng), u(rng), u(rng), 1.0, nat);
    CHECK(std::abs(r.prob_R + r.prob_T - 1.0) < 1e-12);
    CHECK(r.prob_R == doctest::Approx(std::norm(r.R)).epsilon(1e-15));
    CHECK(r.prob_T == doctest::Approx(std::norm(r.T)).epsilon(1e-15));
  }
  CHECK(barrier_scattering(1.0, 2.0, 1e-9, 1.0, nat).prob_T == doctest::Approx(1.0).epsilon(1e-12));
  // E = V0 with k = 1, a = 1: |T|^2 = 4 / (a^2 k^2 + 4)
  const auto lim = barrier_scattering(0.5, 0.5, 1.0, 1.0, nat);
  CHECK(lim.prob_T == doctest::Approx(0.8).epsilon(1e-14));
  CHECK_FALSE(lim.C.has_value());
  const auto near = barrier_scattering(0.5 * (1 + 1e-9), 0.5, 1.0, 1.0, nat);
  CHECK(near.prob_T == doctest::Approx(0.8).epsilon(1e-8));
  CHECK_THROWS_AS(barrier_scattering(0, 1, 1, 1, nat), Error);
  CHECK_THROWS_AS(barrier_scattering(1, -1, 1, 1, nat), Error);
  CHECK_THROWS_AS(barrier_scattering(1, 1, 0, 1, nat), Error);
}

TEST_CASE("tunnelling probability from the quoted formula") {
  using Case = std::tuple<double, double, double>;
  for (auto [E, V0, a] : {Case{0.5, 2.0, 1.0}, Case{1.0, 3.0, 0.4}, Case{0.1, 0.2, 4.0}}) {
    const double k = std::sqrt(2 * E), b = std::sqrt(2 * (V0 - E));
    const double s = std::sinh(a * b);
    const double expected = 4 * k * k * b * b / (std::pow(k * k + b * b, 2) * s * s + 4 * k * k * b * b);
    CHECK(barrier_scattering(E, V0, a, 1.0, nat).prob_T == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("tunnelling decreases with thickness") {
  double last = 1.0;
  for (double a = 0.1; a < 5; a += 0.1) {
    const double t = barrier_scattering(0.7, 1.3, a, 1.0, nat).prob_T;
    CHECK(t < last);
    last = t;
  }
}

TEST_CASE("interior coefficients satisfy the matching conditions") {
  // psi = C e^{beta x} + C' e^{-beta x} inside, with beta imaginary for E > V0.
  for (auto [E, V0] : {std::pair{0.6, 1.5}, std::pair{2.5, 1.0}}) {
    const double a = 1.2, k = std::sqrt(2 * E);
    const auto r = barrier_scattering(E, V0, a, 1.0, nat);
    REQUIRE(r.C.has_value());
    const complex kappa = E < V0 ? complex(std::sqrt(2 * (V0 - E)), 0) : complex(0, std::sqrt(2 * (E - V0)));
    auto inside = [&](double x) { return *r.C * std::exp(kappa * x) + *r.C_prime * std::exp(-kappa * x); };
    auto inside_d = [&](double x) { return kappa * (*r.C * std::exp(kappa * x) - *r.C_prime * std::exp(-kappa * x)); };
    const complex I(0, 1);
    CHECK(std::abs(inside(0) - (1.0 + r.R)) < 1e-12);
    CHECK(std::abs(inside_d(0) - I * k * (1.0 - r.R)) < 1e-12);
    CHECK(std::abs(inside(a) - r.T * std::exp(I * k * a)) < 1e-12);
    CHECK(std::abs(inside_d(a) - I * k * r.T * std::exp(I * k * a)) < 1e-12);
  }
}

TEST_CASE("hermite polynomials") {
  CHECK(hermite(0, 0.3) == 1.0);
  CHECK(hermite(1, 2.0) == 4.0);
  CHECK(hermite(4, 1.0) == -20.0);
  CHECK(hermite(2, 1.5) == doctest::Approx(-2 + 4 * 2.25));
  for (double q : {0.1, 0.7, 1.9}) CHECK(hermite(9, -q) == doctest::Approx(-hermite(9, q)).epsilon(1e-15));
  CHECK_THROWS_AS(hermite(65, 1.0), Error);
  CHECK_THROWS_AS(hermite(-1, 1.0), Error);
}

TEST_CASE("hermite recurrence matches the explicit table") {
  const std::vector<std::vector<long long>> table = {
      {1},
      {0, 2},
      {-2, 0, 4},
      {0, -12, 0, 8},
      {12, 0, -48, 0, 16},
      {0, 120, 0, -160, 0, 32},
      {-120, 0, 720, 0, -480, 0, 64},
      {0, -1680, 0, 3360, 0, -1344, 0, 128},
      {1680, 0, -13440, 0, 13440, 0, -3584, 0, 256},
      {0, 30240, 0, -80640, 0, 48384, 0, -9216, 0, 512}};
  for (int n = 0; n <= 9; ++n) {
    const auto coeffs = hermite_coefficients(n);
    REQUIRE(coeffs.size() == table[n].size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) CHECK(coeffs[j] == table[n][j]);
    for (long long q : {-2, -1, 0, 1, 2}) {
      long long exact = 0, power = 1;
      for (long long c : table[n]) exact += c * power, power *= q;
      CHECK(hermite(n, double(q)) == double(exact));
    }
  }
}

TEST_CASE("oscillator levels") {
  CHECK(oscillator_energy(0, 1, nat) == 0.5);
  CHECK(oscillator_energy(3, 2, nat) == 7.0);
  for (int n = 0; n < 20; ++n) CHECK(oscillator_energy(n + 1, 1.3, nat) - oscillator_energy(n, 1.3, nat) == doctest::Approx(1.3));
  CHECK_THROWS_AS(oscillator_energy(-1, 1, nat), Error);
}

TEST_CASE("oscillator states") {
  const double m = 1.0, w = 1.0;
  CHECK(oscillator_state(0, m, w, nat, 0.0) == doctest::Approx(std::pow(1 / pi, 0.25)).epsilon(1e-15));
  const std::size_t n = 8001;
  const double L = 14, dx = 2 * L / (n - 1);
  for (int k = 0; k <= 10; ++k) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::pow(oscillator_state(k, m, w, nat, -L + i * dx), 2);
    CHECK(std::abs(oracle::trapezoid(f, dx) - 1.0) < 1e-10);
    for (double x : {0.3, 1.1, 2.7}) {
      CHECK(oscillator_state(k, m, w, nat, -x) == doctest::Approx((k % 2 ? -1 : 1) * oscillator_state(k, m, w, nat, x)).epsilon(1e-14));
    }
  }
  // large n stays finite
  CHECK(std::isfinite(oscillator_state(60, m, w, nat, 3.0)));
  CHECK(std::isfinite(oscillator_state(64, 2.0, 3.0, nat, 1.0)));
}

TEST_CASE("blackbody") {
  const auto si = PhysicalConstants::si();
  const double T = 300;
  const double nu = 1e-6 * si.boltzmann_k * T / si.h;
  const double ratio = blackbody_density(nu, T, RadiationModel::planck, si) /
                       blackbody_density(nu, T, RadiationModel::rayleigh_jeans, si);
  CHECK(std::abs(ratio - 1) < 1e-5);
  const double rj1 = blackbody_density(1e12, T, RadiationModel::rayleigh_jeans, si);
  const double rj2 = blackbody_density(2e12, T, RadiationModel::rayleigh_jeans, si);
  CHECK(rj2 / rj1 == doctest::Approx(4.0).epsilon(1e-14));
  double last = 1.0;
  for (double x = 1e-4; x < 20; x *= 1.5) {
    const double nu_x = x * si.boltzmann_k * T / si.h;
    const double r = blackbody_density(nu_x, T, RadiationModel::planck, si) /
                     blackbody_density(nu_x, T, RadiationModel::rayleigh_jeans, si);
    CHECK(r < last);
    last = r;
  }
  // total energy converges: with h = 2 pi and c = k = T = 1 the integral is pi^2 / 15
  double total = 0;
  const double dx = 1e-3;
  for (double x = dx; x < 60; x += dx) total += blackbody_density(x, 1.0, RadiationModel::planck, nat) * dx;
  CHECK(total == doctest::Approx(pi * pi / 15).epsilon(1e-6));
  CHECK_THROWS_AS(blackbody_density(-1, T, RadiationModel::planck, si), Error);
  CHECK_THROWS_AS(blackbody_density(1, 0, RadiationModel::planck, si), Error);
}

TEST_CASE("photoelectric, de Broglie, Bohr") {
  const auto si = PhysicalConstants::si();
  const double W = 3e-19;
  CHECK(std::abs(photoelectric_kinetic(W / si.h, W, si)) < 1e-34);
  CHECK(photoelectric_kinetic(2 * W / si.h, W, si) == doctest::Approx(W));
  CHECK_FALSE(photoelectric_emits(photoelectric_kinetic(0.5 * W / si.h, W, si)));
  CHECK(de_broglie_wavelength(si.h, si) == doctest::Approx(1.0));
  CHECK(de_broglie_wavelength(2e-24, si) == doctest::Approx(0.5 * de_broglie_wavelength(1e-24, si)));
  CHECK_THROWS_AS(de_broglie_wavelength(0, si), Error);
  CHECK(bohr_frequency(1.0, 1.0, si) == 0.0);
  CHECK(bohr_frequency(2 * si.h, si.h, si) == doctest::Approx(1.0));
}

TEST_CASE("sommerfeld-wilson oscillator") {
  CHECK(sommerfeld_wilson_oscillator_energy(1, 1, nat) == 1.0);
  for (int n = 1; n <= 10; ++n) {
    CHECK(sommerfeld_wilson_oscillator_energy(n, 1.7, nat) - oscillator_energy(n, 1.7, nat) == doctest::Approx(-0.85));
    CHECK(sommerfeld_wilson_oscillator_energy(n, 2.0, nat) == 2 * sommerfeld_wilson_oscillator_energy(n, 1.0, nat));
  }
  CHECK_THROWS_AS(sommerfeld_wilson_oscillator_energy(0, 1, nat), Error);
  // orbit action from quadrature: oint p dq = 2 int_{-A}^{A} sqrt(2mE - m^2 w^2 x^2) dx
  const double w = 1.3, E = sommerfeld_wilson_oscillator_energy(3, w, nat);
  const double A = std::sqrt(2 * E) / w;
  const int N = 200000;
  double action = 0;
  for (int i = 0; i < N; ++i) {
    const double theta = pi * (i + 0.5) / N;  // x = -A cos(theta)
    const double x = -A * std::cos(theta);
    action += 2 * std::sqrt(std::max(0.0, 2 * E - w * w * x * x)) * A * std::sin(theta) * (pi / N);
  }
  CHECK(action == doctest::Approx(3 * nat.h).epsilon(1e-8));
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qm1d/analytic.hpp"
#include "qm1d/errors.hpp"
#include "qm1d/observables.hpp"
#include "qm1d/spectral.hpp"

using namespace qm1d;
using std::numbers::pi;

namespace {

const auto nat = PhysicalConstants::natural();

// Random combination of localized Gaussians.
WaveFunction smooth_random_state(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<std::array<double, 4>> terms(6);
  for (auto& t : terms) t = {u(rng), 3 * u(rng), 0.5 + 0.4 * u(rng), 4 * u(rng)};
  return normalize(sample(g, [&](double x) {
    complex s = 0;
    for (const auto& t : terms) s += t[0] * std::exp(-(x - t[1]) * (x - t[1]) / (2 * t[2] * t[2])) * std::polar(1.0, t[3] * x);
    return s;
  }));
}

}  // namespace

TEST_CASE("momentum mesh") {
  const Grid g = make_grid(-10, 10, 256);
  const auto mg = momentum_grid(g, nat);
  CHECK(mg.dp == doctest::Approx(2 * pi / (256 * g.dx())));
  CHECK(mg.p(128) == 0.0);
  CHECK(mg.p(0) == doctest::Approx(-128 * mg.dp));
  const auto odd = momentum_grid(make_grid(-10, 10, 255), nat);
  CHECK(odd.p(127) == 0.0);
}

TEST_CASE("gaussian transforms to a gaussian") {
  const Grid g = make_grid(-20, 20, 1024);
  auto params = analytic::packet_params(1.0, 0.0, nat);
  const auto psi = normalize(sample(g, [&](double x) { return analytic::gaussian_packet_x(params, x); }));
  const auto phi = to_momentum_space(psi, nat);
  CHECK(phi.space() == Space::momentum);
  // |phi|^2 = sqrt(2 alpha / pi) exp(-2 alpha p^2)
  double worst = 0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double p = phi.coordinate(j);
    worst = std::max(worst, std::abs(std::norm(phi[j]) - std::sqrt(2 / pi) * std::exp(-2 * p * p)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("modulated packet peaks at p = k0") {
  const Grid g = make_grid(-20, 20, 1024);
  auto params = analytic::packet_params(1.0, 5.0, nat);
  const auto psi = normalize(sample(g, [&](double x) { return analytic::gaussian_packet_x(params, x); }));
  const auto phi = to_momentum_space(psi, nat);
  std::size_t best = 0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (std::norm(phi[j]) > std::norm(phi[best])) best = j;
  }
  CHECK(std::abs(phi.coordinate(best) - 5.0) <= phi.momenta().dp);
}

TEST_CASE("zero maps to zero") {
  const Grid g = make_grid(-1, 1, 64);
  const auto zero = sample(g, [](double) { return 0.0; });
  const auto phi = to_momentum_space(zero, nat);
  for (std::size_t j = 0; j < phi.size(); ++j) CHECK(phi[j] == complex(0));
  const auto back = to_position_space(phi, nat);
  for (std::size_t j = 0; j < back.size(); ++j) CHECK(back[j] == complex(0));
}

TEST_CASE("parseval and round trip") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {256u, 257u, 1000u}) {
    const Grid g = make_grid(-15, 15, n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto psi = smooth_random_state(g, rng);
      Warnings w;
      const auto phi = to_momentum_space(psi, nat, &w);
      CHECK(w.empty());
      CHECK(std::abs(norm_squared(phi) - norm_squared(psi)) < 1e-12);
      const auto back = to_position_space(phi, nat);
      double worst = 0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(back[i] - psi[i]));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("transform respects hbar") {
  const auto c = PhysicalConstants::with(0.5, 1.0);
  const Grid g = make_grid(-20, 20, 1024);
  const auto psi = normalize(sample(g, [](double x) { return std::exp(-x * x / 4) * std::polar(1.0, 3.0 * x); }));
  const auto phi = to_momentum_space(psi, c);
  CHECK(std::abs(norm_squared(phi) - 1.0) < 1e-12);
  CHECK(momentum_expectation_pspace(psi, c) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("spike in momentum space is a plane wave") {
  const Grid g = make_grid(-5, 5, 128);
  const auto mg = momentum_grid(g, nat);
  ComplexVector spike(128, complex(0));
  const std::size_t j0 = 64 + 7;
  spike[j0] = 1.0;
  const auto psi = to_position_space(WaveFunction(g, mg, spike), nat);
  const double p0 = mg.p(j0);
  double worst = 0;
  for (std::size_t i = 0; i < 128; ++i) {
    const complex expected = mg.dp * std::polar(1.0, p0 * g.x(i)) / std::sqrt(2 * pi);
    worst = std::max(worst, std::abs(psi[i] - expected));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("space tags are checked") {
  const Grid g = make_grid(-5, 5, 64);
  const auto psi = sample(g, [](double x) { return std::exp(-x * x); });
  const auto phi = to_momentum_space(psi, nat);
  for (auto kind : {0, 1}) {
    try {
      if (kind == 0) to_momentum_space(phi, nat);
      else to_position_space(psi, nat);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::space_tag);
    }
  }
}

TEST_CASE("edge warning") {
  const Grid g = make_grid(-2, 2, 64);
  Warnings w;
  to_momentum_space(sample(g, [](double x) { return std::exp(-x * x); }), nat, &w);
  CHECK(w.size() == 1);
}

TEST_CASE("momentum routes agree for a smooth packet") {
  const Grid g = make_grid(-15, 15, 200001);
  auto params = analytic::packet_params(1.0, 1.0, nat);
  const auto psi = normalize(sample(g, [&](double x) { return analytic::gaussian_packet_x(params, x); }));
  const double pp = momentum_expectation_pspace(psi, nat);
  const double px = momentum_expectation_xspace(psi, nat);
  CHECK(std::abs(pp - 1.0) < 1e-10);
  CHECK(std::abs(pp - px) < 1e-8);
}

TEST_CASE("spectral derivative of a gaussian") {
  const Grid g = make_grid(-15, 15, 512);
  const auto psi = sample(g, [](double x) { return std::exp(-x * x / 2); });
  const auto d = spectral_derivative(psi, nat);
  double worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.x(i);
    worst = std::max(worst, std::abs(d[i] - (-x * std::exp(-x * x / 2))));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("fft plan matches a direct sum") {
  const std::size_t n = 12;
  FourierPlan plan(n);
  ComplexVector v(n), ref(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = {std::cos(0.3 * j), std::sin(1.1 * j)};
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t j = 0; j < n; ++j) ref[m] += v[j] * std::polar(1.0, -2 * pi * double(j * m) / n);
  }
  plan.forward(v);
  for (std::size_t m = 0; m < n; ++m) CHECK(std::abs(v[m] - ref[m]) < 1e-12);
}

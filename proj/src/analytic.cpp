#include "qm1d/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qm1d/errors.hpp"

namespace qm1d::analytic {

using std::numbers::pi;

namespace {

void check_packet(const GaussianPacketParams& p) {
  require(p.alpha > 0.0 && std::isfinite(p.alpha), ErrorKind::parameter, "packet requires alpha > 0");
  require(p.mass > 0.0, ErrorKind::parameter, "packet requires mass > 0");
}

}  // namespace

GaussianPacketParams packet_params(double alpha, double k0, const PhysicalConstants& constants) {
  GaussianPacketParams p{alpha, k0, constants.mass, constants};
  check_packet(p);
  return p;
}

complex gaussian_packet_x(const GaussianPacketParams& params, double x) {
  check_packet(params);
  const double envelope = std::sqrt(pi / params.alpha) * std::exp(-x * x / (4.0 * params.alpha));
  return std::polar(envelope, params.k0 * x);
}

complex free_packet_xt(const GaussianPacketParams& params, double x, double t) {
  check_packet(params);
  const complex width(params.alpha, params.beta() * t);
  const double shifted = x - params.group_velocity() * t;
  const complex phase = std::polar(1.0, params.k0 * x - params.omega0() * t);
  return phase * std::sqrt(pi / width) * std::exp(-shifted * shifted / (4.0 * width));
}

double packet_width(const GaussianPacketParams& params, double t) {
  check_packet(params);
  const double r = params.beta() * t / params.alpha;
  return 2.0 * std::sqrt(2.0 * params.alpha) * std::sqrt(1.0 + r * r);
}

double packet_wavenumber_width(const GaussianPacketParams& params) {
  check_packet(params);
  return 2.0 / std::sqrt(2.0 * params.alpha);
}

double packet_sigma_x(const GaussianPacketParams& params, double t) {
  return packet_width(params, t) / (2.0 * std::numbers::sqrt2);
}

double well_energy(int n, double a, const PhysicalConstants& constants) {
  require(n >= 1, ErrorKind::parameter, "well level requires n >= 1");
  require(a > 0.0, ErrorKind::parameter, "well width requires a > 0");
  const double nn = static_cast<double>(n);
  return nn * nn * pi * pi * constants.hbar * constants.hbar / (2.0 * constants.mass * a * a);
}

double well_state(int n, double a, double x) {
  require(n >= 1, ErrorKind::parameter, "well level requires n >= 1");
  require(a > 0.0, ErrorKind::parameter, "well width requires a > 0");
  if (x < 0.0 || x > a) return 0.0;
  return std::sqrt(2.0 / a) * std::sin(static_cast<double>(n) * pi * x / a);
}

ScatteringResult barrier_scattering(double E, double V0, double a, double mass,
                                    const PhysicalConstants& constants) {
  require(E > 0.0 && std::isfinite(E), ErrorKind::parameter, "scattering requires E > 0");
  require(V0 > 0.0 && std::isfinite(V0), ErrorKind::parameter, "barrier requires V0 > 0");
  require(a > 0.0 && std::isfinite(a), ErrorKind::parameter, "barrier requires a > 0");
  require(mass > 0.0, ErrorKind::parameter, "scattering requires mass > 0");

  const double hbar = constants.hbar;
  const double k = std::sqrt(2.0 * mass * E) / hbar;
  const double beta2 = 2.0 * mass * (V0 - E) / (hbar * hbar);
  const complex I(0.0, 1.0);
  const complex incident_phase = std::polar(1.0, -k * a);

  ScatteringResult out;
  out.energy = E;

  if (std::abs(1.0 - E / V0) < kStepLimitTolerance) {
    // beta -> 0: sinh(a beta)/beta -> a, cosh(a beta) -> 1.
    const double k2 = k * k;
    out.R = k2 * a / (2.0 * I * k + k2 * a);
    out.T = 2.0 * k * incident_phase / (2.0 * k - I * k2 * a);
  } else if (beta2 > 0.0) {
    // Evanescent interior: divide through by cosh(a beta) so thick barriers
    // do not overflow.
    const double beta = std::sqrt(beta2);
    const double th_over_beta = std::tanh(a * beta) / beta;
    const double sech = 1.0 / std::cosh(a * beta);
    const double k2 = k * k;
    out.R = (k2 + beta2) * th_over_beta / (2.0 * I * k + (k2 - beta2) * th_over_beta);
    out.T = 2.0 * k * sech * incident_phase / (2.0 * k - I * (k2 - beta2) * th_over_beta);
    const double decay = std::exp(-2.0 * a * beta);
    const complex ib = I * beta;
    const complex denom = (k2 - beta2) * (1.0 - decay) + 2.0 * I * k * beta * (1.0 + decay);
    out.C_prime = 2.0 * k * (k + ib) / denom;
    out.C = -2.0 * k * (k - ib) * decay / denom;
  } else {
    // beta = i k_B: sinh(a beta)/beta = sin(a k_B)/k_B, cosh(a beta) = cos(a k_B).
    const double kb = std::sqrt(-beta2);
    const double sinc = std::sin(a * kb) / kb;
    const double ch = std::cos(a * kb);
    const double k2 = k * k;
    out.R = (k2 + beta2) * sinc / (2.0 * I * k * ch + (k2 - beta2) * sinc);
    out.T = 2.0 * k * incident_phase / (2.0 * k * ch - I * (k2 - beta2) * sinc);
    const complex beta = I * kb;
    const complex decay = std::exp(-2.0 * a * beta);
    const complex denom = (k2 - beta2) * (1.0 - decay) + 2.0 * I * k * beta * (1.0 + decay);
    out.C_prime = 2.0 * k * (k + I * beta) / denom;
    out.C = -2.0 * k * (k - I * beta) * decay / denom;
  }
  out.prob_R = std::norm(out.R);
  out.prob_T = std::norm(out.T);
  return out;
}

namespace {

long double hermite_ld(int n, long double q) {
  long double prev = 1.0L;
  if (n == 0) return prev;
  long double cur = 2.0L * q;
  for (int j = 1; j < n; ++j) {
    const long double next = 2.0L * q * cur - 2.0L * static_cast<long double>(j) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void check_degree(int n) {
  require(n >= 0, ErrorKind::parameter, "Hermite degree must be >= 0");
  require(n <= kMaxHermiteDegree, ErrorKind::parameter,
          "Hermite degree above " + std::to_string(kMaxHermiteDegree) + " is not supported");
}

}  // namespace

double hermite(int n, double q) {
  check_degree(n);
  return static_cast<double>(hermite_ld(n, q));
}

std::vector<std::int64_t> hermite_coefficients(int n) {
  require(n >= 0 && n <= 30, ErrorKind::parameter, "integer Hermite coefficients limited to n <= 30");
  std::vector<std::int64_t> prev{1};
  if (n == 0) return prev;
  std::vector<std::int64_t> cur{0, 2};
  for (int j = 1; j < n; ++j) {
    std::vector<std::int64_t> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * j * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double oscillator_energy(int n, double omega, const PhysicalConstants& constants) {
  require(n >= 0, ErrorKind::parameter, "oscillator level requires n >= 0");
  require(omega > 0.0, ErrorKind::parameter, "oscillator requires omega > 0");
  return (static_cast<double>(n) + 0.5) * constants.hbar * omega;
}

double oscillator_state(int n, double mass, double omega, const PhysicalConstants& constants,
                        double x) {
  check_degree(n);
  require(omega > 0.0 && mass > 0.0, ErrorKind::parameter, "oscillator requires omega, mass > 0");
  const long double scale = std::sqrt(static_cast<long double>(mass) * omega / constants.hbar);
  const long double q = scale * x;
  const long double log_norm = 0.25L * std::log(static_cast<long double>(mass) * omega /
                                                (constants.hbar * std::numbers::pi_v<long double>)) -
                               0.5L * (n * std::numbers::ln2_v<long double> + std::lgamma(n + 1.0L));
  return static_cast<double>(std::exp(log_norm - 0.5L * q * q) * hermite_ld(n, q));
}

double blackbody_density(double nu, double T, RadiationModel model,
                         const PhysicalConstants& constants) {
  require(nu > 0.0 && T > 0.0, ErrorKind::parameter, "blackbody requires nu > 0 and T > 0");
  const double c3 = constants.light_c * constants.light_c * constants.light_c;
  const double kT = constants.boltzmann_k * T;
  if (model == RadiationModel::rayleigh_jeans) return 8.0 * pi * nu * nu / c3 * kT;
  const double x = constants.h * nu / kT;
  return 8.0 * pi * constants.h / c3 * nu * nu * nu / std::expm1(x);
}

double photoelectric_kinetic(double nu, double work_function, const PhysicalConstants& constants) {
  return constants.h * nu - work_function;
}

double de_broglie_wavelength(double p, const PhysicalConstants& constants) {
  require(p > 0.0, ErrorKind::parameter, "de Broglie wavelength requires p > 0");
  return constants.h / p;
}

double bohr_frequency(double E, double E_prime, const PhysicalConstants& constants) {
  return (E - E_prime) / constants.h;
}

double sommerfeld_wilson_oscillator_energy(int n, double omega, const PhysicalConstants& constants) {
  require(n >= 1, ErrorKind::parameter, "quantization rule requires n >= 1");
  require(omega > 0.0, ErrorKind::parameter, "oscillator requires omega > 0");
  // The orbit p^2/2m + m w^2 x^2/2 = E is an ellipse of area 2 pi E / w,
  // so 2 pi E / w = n h gives E = n hbar w.
  return static_cast<double>(n) * constants.hbar * omega;
}

}  // namespace qm1d::analytic

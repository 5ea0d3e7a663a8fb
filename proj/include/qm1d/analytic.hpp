#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qm1d/constants.hpp"
#include "qm1d/core.hpp"

// Closed-form results used as oracles for the numerical modules.
namespace qm1d::analytic {

/// Gaussian packet with spectral weight g(k) = exp(-alpha (k - k0)^2).
struct GaussianPacketParams {
  double alpha;
  double k0;
  double mass;
  PhysicalConstants constants;

  double group_velocity() const { return constants.hbar * k0 / mass; }
  /// Curvature term of the free dispersion, hbar / (2m).
  double beta() const { return constants.hbar / (2.0 * mass); }
  double omega0() const { return constants.hbar * k0 * k0 / (2.0 * mass); }
};

GaussianPacketParams packet_params(double alpha, double k0, const PhysicalConstants& constants);

/// f(x) = exp(i k0 x) sqrt(pi/alpha) exp(-x^2 / (4 alpha)), unnormalized.
complex gaussian_packet_x(const GaussianPacketParams& params, double x);

/// Free evolution of the packet:
/// F(x,t) = exp(i[k0 x - w0 t]) sqrt(pi/(alpha + i beta t))
///          exp(-(x - v_g t)^2 / (4 (alpha + i beta t))).
complex free_packet_xt(const GaussianPacketParams& params, double x, double t);

/// 1/e full width of |F(x,t)|^2: 2 sqrt(2 alpha) sqrt(1 + beta^2 t^2 / alpha^2).
double packet_width(const GaussianPacketParams& params, double t);

/// 1/e full width of |g(k)|^2: 2 / sqrt(2 alpha).
double packet_wavenumber_width(const GaussianPacketParams& params);

/// Standard deviation of |F(x,t)|^2; equals packet_width / (2 sqrt 2).
double packet_sigma_x(const GaussianPacketParams& params, double t);

double well_energy(int n, double a, const PhysicalConstants& constants);
/// sqrt(2/a) sin(n pi x / a) on [0, a], 0 outside.
double well_state(int n, double a, double x);

/// Reflection/transmission for a barrier of height V0 on [0, a), unit
/// incidence from the left: psi = e^{ikx} + R e^{-ikx} (x < 0),
/// C e^{beta x} + C' e^{-beta x} (0 < x < a), T e^{ikx} (x > a).
struct ScatteringResult {
  complex R;
  complex T;
  std::optional<complex> C;        // interior psi = C e^{beta x} + C_prime e^{-beta x}
  std::optional<complex> C_prime;
  double prob_R = 0.0;
  double prob_T = 0.0;
  double energy = 0.0;
};

/// E relative distance to V0 below which the linear (beta -> 0) branch is used.
inline constexpr double kStepLimitTolerance = 1e-12;

ScatteringResult barrier_scattering(double E, double V0, double a, double mass,
                                    const PhysicalConstants& constants);

inline constexpr int kMaxHermiteDegree = 64;

/// Physicists' Hermite polynomial by upward recurrence, n <= 64.
double hermite(int n, double q);

/// Integer coefficients c_j of H_n(q) = sum_j c_j q^j, n <= 30.
std::vector<std::int64_t> hermite_coefficients(int n);

double oscillator_energy(int n, double omega, const PhysicalConstants& constants);

/// N_n exp(-q^2/2) H_n(q), q = x sqrt(m omega / hbar),
/// N_n^2 = sqrt(m omega / (hbar pi)) / (2^n n!).
double oscillator_state(int n, double mass, double omega, const PhysicalConstants& constants,
                        double x);

enum class RadiationModel { planck, rayleigh_jeans };

double blackbody_density(double nu, double T, RadiationModel model,
                         const PhysicalConstants& constants);

/// h nu - W; negative means the frequency is below the emission threshold.
double photoelectric_kinetic(double nu, double work_function, const PhysicalConstants& constants);
inline bool photoelectric_emits(double kinetic) { return kinetic > 0.0; }

double de_broglie_wavelength(double p, const PhysicalConstants& constants);
double bohr_frequency(double E, double E_prime, const PhysicalConstants& constants);

/// Level from the closed-orbit rule  oint p dq = 2 pi E / omega = n h,
/// i.e. E = n hbar omega, n >= 1.
double sommerfeld_wilson_oscillator_energy(int n, double omega, const PhysicalConstants& constants);

}  // namespace qm1d::analytic

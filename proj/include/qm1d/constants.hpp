#pragma once

#include <numbers>

namespace qm1d {

/// Physical constants used throughout the engine. All fields are strictly
/// positive and `h == 2*pi*hbar`. Build through `natural()` or `si()`.
struct PhysicalConstants {
  double hbar;
  double h;
  double mass;         // default particle mass
  double boltzmann_k;
  double light_c;

  /// hbar = m = k = c = 1.
  static PhysicalConstants natural();
  /// SI values: h = 6.6261e-34 J s, k = 1.3807e-23 J/K, c = 2.998e8 m/s,
  /// electron mass as the default particle.
  static PhysicalConstants si();
  /// Natural units with hbar and mass overridden.
  static PhysicalConstants with(double hbar, double mass);
};

}  // namespace qm1d

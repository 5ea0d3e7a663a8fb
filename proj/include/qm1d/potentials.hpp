#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "qm1d/core.hpp"

namespace qm1d {

inline constexpr double kHardWall = std::numeric_limits<double>::infinity();

inline bool is_hard_wall(double v) noexcept { return v == kHardWall; }

/// 0 on [0, a), infinite elsewhere.
struct InfiniteWell {
  double a;
};

/// V0 on [0, a), 0 elsewhere.
struct Barrier {
  double V0;
  double a;
};

/// m omega^2 x^2 / 2.
struct Harmonic {
  double omega;
  double mass = 1.0;
};

/// lambda x for x >= 0, infinite for x < 0 (wall at the origin).
struct LinearRamp {
  double lambda;
};

struct Segment {
  double x_start;  // may be -inf for the first segment
  double x_end;    // may be +inf for the last segment
  double V;
};

/// Ordered, non-overlapping [x_start, x_end) segments; 0 outside them.
struct PiecewiseConstant {
  std::vector<Segment> segments;
};

/// Values on a grid; +inf entries are hard walls. Linear interpolation
/// between nodes, hard wall outside the sampled range.
struct Sampled {
  Grid grid;
  RealVector values;
};

class Potential {
 public:
  using Variant = std::variant<InfiniteWell, Barrier, Harmonic, LinearRamp, PiecewiseConstant, Sampled>;

  // Each factory validates its invariants and throws ErrorKind::parameter.
  static Potential infinite_well(double a);
  static Potential barrier(double V0, double a);
  static Potential harmonic(double omega, double mass = 1.0);
  static Potential linear_ramp(double lambda);
  static Potential piecewise(std::vector<Segment> segments);
  static Potential sampled(const Grid& grid, RealVector values);
  static Potential free() { return piecewise({}); }

  const Variant& variant() const noexcept { return variant_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&variant_);
  }

  /// True for potentials that grow without bound at the given side and
  /// are therefore truncated by the grid box.
  bool unbounded_left() const noexcept;
  bool unbounded_right() const noexcept;

 private:
  explicit Potential(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// V(x), kHardWall inside walls.
double evaluate(const Potential& potential, double x);

struct SampledPotential {
  RealVector values;       // kHardWall where masked
  std::vector<bool> mask;  // true = excluded (psi forced to 0)
};

/// Samples V on the grid. Points inside a wall or on a wall position are
/// masked. A grid with no accessible point is a configuration error.
SampledPotential sample_on_grid(const Potential& potential, const Grid& grid);

}  // namespace qm1d

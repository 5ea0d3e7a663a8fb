#include "qm1d/potentials.hpp"

#include <cmath>

#include "qm1d/errors.hpp"

namespace qm1d {

Potential Potential::infinite_well(double a) {
  require(a > 0.0 && std::isfinite(a), ErrorKind::parameter, "infinite well requires a > 0");
  return Potential(InfiniteWell{a});
}

Potential Potential::barrier(double V0, double a) {
  require(V0 > 0.0 && std::isfinite(V0), ErrorKind::parameter, "barrier requires V0 > 0");
  require(a > 0.0 && std::isfinite(a), ErrorKind::parameter, "barrier requires a > 0");
  return Potential(Barrier{V0, a});
}

Potential Potential::harmonic(double omega, double mass) {
  require(omega > 0.0 && std::isfinite(omega), ErrorKind::parameter, "harmonic requires omega > 0");
  require(mass > 0.0 && std::isfinite(mass), ErrorKind::parameter, "harmonic requires mass > 0");
  return Potential(Harmonic{omega, mass});
}

Potential Potential::linear_ramp(double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::parameter,
          "linear ramp requires lambda > 0");
  return Potential(LinearRamp{lambda});
}

Potential Potential::piecewise(std::vector<Segment> segments) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    require(!std::isnan(s.x_start) && !std::isnan(s.x_end) && s.x_start < s.x_end,
            ErrorKind::parameter, "segment requires x_start < x_end");
    require(std::isfinite(s.V), ErrorKind::parameter, "segment potential must be finite");
    require(i == 0 || std::isfinite(s.x_start), ErrorKind::parameter,
            "only the first segment may start at -inf");
    require(i + 1 == segments.size() || std::isfinite(s.x_end), ErrorKind::parameter,
            "only the last segment may end at +inf");
    require(i == 0 || segments[i - 1].x_end <= s.x_start, ErrorKind::parameter,
            "segments must be ordered and non-overlapping");
  }
  return Potential(PiecewiseConstant{std::move(segments)});
}

Potential Potential::sampled(const Grid& grid, RealVector values) {
  require(values.size() == grid.size(), ErrorKind::shape, "sampled potential size mismatch");
  for (double v : values) {
    require(std::isfinite(v) || is_hard_wall(v), ErrorKind::parameter,
            "sampled potential values must be finite or +inf");
  }
  return Potential(Sampled{grid, std::move(values)});
}

bool Potential::unbounded_left() const noexcept {
  return std::holds_alternative<Harmonic>(variant_);
}

bool Potential::unbounded_right() const noexcept {
  return std::holds_alternative<Harmonic>(variant_) || std::holds_alternative<LinearRamp>(variant_);
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double sampled_value(const Sampled& s, double x) {
  const Grid& g = s.grid;
  if (x < g.x_min() || x > g.x_max()) return kHardWall;
  const double t = (x - g.x_min()) / g.dx();
  auto i = static_cast<std::size_t>(std::floor(t));
  if (i + 1 >= g.size()) return s.values.back();
  const double frac = t - static_cast<double>(i);
  const double a = s.values[i];
  const double b = s.values[i + 1];
  if (frac == 0.0) return a;
  if (is_hard_wall(a) || is_hard_wall(b)) return kHardWall;
  return a + frac * (b - a);
}

}  // namespace

double evaluate(const Potential& potential, double x) {
  return std::visit(
      overloaded{
          [x](const InfiniteWell& w) { return (x >= 0.0 && x < w.a) ? 0.0 : kHardWall; },
          [x](const Barrier& b) { return (x >= 0.0 && x < b.a) ? b.V0 : 0.0; },
          [x](const Harmonic& h) { return 0.5 * h.mass * h.omega * h.omega * x * x; },
          [x](const LinearRamp& r) { return x >= 0.0 ? r.lambda * x : kHardWall; },
          [x](const PiecewiseConstant& p) {
            for (const Segment& s : p.segments) {
              if (x >= s.x_start && x < s.x_end) return s.V;
            }
            return 0.0;
          },
          [x](const Sampled& s) { return sampled_value(s, x); },
      },
      potential.variant());
}

SampledPotential sample_on_grid(const Potential& potential, const Grid& grid) {
  SampledPotential out;
  const std::size_t n = grid.size();
  out.values.resize(n);
  out.mask.assign(n, false);

  if (const auto* s = potential.get_if<Sampled>(); s && s->grid == grid) {
    out.values = s->values;
  } else {
    for (std::size_t i = 0; i < n; ++i) out.values[i] = evaluate(potential, grid.x(i));
  }

  // Wall positions themselves carry psi = 0.
  const double tol = 1e-9 * grid.dx();
  auto on_wall = [&](double x) {
    if (const auto* w = potential.get_if<InfiniteWell>()) {
      return std::abs(x) <= tol || std::abs(x - w->a) <= tol;
    }
    if (potential.get_if<LinearRamp>()) return std::abs(x) <= tol;
    return false;
  };

  bool any_open = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_hard_wall(out.values[i]) || on_wall(grid.x(i))) {
      out.mask[i] = true;
      out.values[i] = kHardWall;
    } else {
      any_open = true;
    }
  }
  require(any_open, ErrorKind::configuration, "grid lies entirely inside a hard wall");
  return out;
}

}  // namespace qm1d

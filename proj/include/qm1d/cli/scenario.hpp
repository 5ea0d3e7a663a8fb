#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "qm1d/constants.hpp"
#include "qm1d/core.hpp"
#include "qm1d/evolution.hpp"
#include "qm1d/potentials.hpp"

namespace qm1d::cli {

/// Scenario rejected before any computation (exit status 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct GridSpec {
  double x_min;
  double x_max;
  std::size_t n;
  Grid make() const { return make_grid(x_min, x_max, n); }
};

struct InitialState {
  enum class Kind { gaussian, eigenstate };
  Kind kind = Kind::gaussian;
  double alpha = 1.0;
  double k0 = 0.0;
  double x0 = 0.0;
  std::size_t level = 0;  // eigenstate index, ground state = 0
};

struct SpectrumSpec {
  std::size_t states = 1;
  bool extrapolate = true;
};

struct ScatterSpec {
  RealVector energies;
};

struct EvolveSpec {
  InitialState initial;
  EvolutionConfig config;
};

struct PacketSpec {
  double alpha = 1.0;
  double k0 = 0.0;
  RealVector times;
};

struct BlackbodySpec {
  double temperature = 1.0;
  RealVector frequencies;
};

struct UncertaintySpec {
  InitialState initial;
};

using CommandSpec =
    std::variant<SpectrumSpec, ScatterSpec, EvolveSpec, PacketSpec, BlackbodySpec, UncertaintySpec>;

struct Scenario {
  std::string command;
  std::string units;
  PhysicalConstants constants = PhysicalConstants::natural();
  double mass = 1.0;
  std::optional<Potential> potential;
  std::optional<GridSpec> grid;
  Format format = Format::csv;
  std::optional<std::string> path;  // output stem
  CommandSpec spec;
};

/// Parses and validates a scenario document. Unknown keys, missing
/// fields, wrong types and invalid physical parameters all raise
/// SchemaError, as does malformed JSON text.
Scenario parse_scenario(const std::string& text);

std::string_view to_string(Format format);

}  // namespace qm1d::cli

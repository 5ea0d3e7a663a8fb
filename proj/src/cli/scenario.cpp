#include "qm1d/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include <json.hpp>

#include "qm1d/errors.hpp"

namespace qm1d::cli {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& message) {
  throw SchemaError(where.empty() ? message : where + ": " + message);
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

const json& object_at(const json& parent, const std::string& key, const std::string& where) {
  if (!parent.contains(key)) schema(where, "missing required key '" + key + "'");
  const json& j = parent.at(key);
  if (!j.is_object()) schema(join(where, key), "expected an object");
  return j;
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  for (const auto& item : j.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) schema(where, "unknown key '" + item.key() + "'");
  }
}

double number(const json& j, const std::string& key, const std::string& where,
              std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    schema(where, "missing required key '" + key + "'");
  }
  const json& v = j.at(key);
  // Infinities are spelled as strings, since JSON has no literal for them.
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  if (!v.is_number()) schema(join(where, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema(join(where, key), "expected a finite number");
  return x;
}

double finite_number(const json& j, const std::string& key, const std::string& where,
                     std::optional<double> fallback = std::nullopt) {
  const double x = number(j, key, where, fallback);
  if (!std::isfinite(x)) schema(join(where, key), "expected a finite number");
  return x;
}

std::size_t count(const json& j, const std::string& key, const std::string& where,
                  std::optional<std::size_t> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    schema(where, "missing required key '" + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    schema(join(where, key), "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string text(const json& j, const std::string& key, const std::string& where,
                 std::initializer_list<const char*> choices,
                 std::optional<std::string> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    schema(where, "missing required key '" + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_string()) schema(join(where, key), "expected a string");
  const std::string s = v.get<std::string>();
  if (choices.size() == 0) return s;
  for (const char* c : choices) {
    if (s == c) return s;
  }
  std::string list;
  for (const char* c : choices) list += std::string(list.empty() ? "" : ", ") + c;
  schema(join(where, key), "'" + s + "' is not one of: " + list);
}

bool flag(const json& j, const std::string& key, const std::string& where, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) schema(join(where, key), "expected a boolean");
  return j.at(key).get<bool>();
}

// Either an explicit array or {"min", "max", "count"} (inclusive, linear).
RealVector samples(const json& parent, const std::string& key, const std::string& where) {
  if (!parent.contains(key)) schema(where, "missing required key '" + key + "'");
  const json& j = parent.at(key);
  const std::string at = join(where, key);
  RealVector out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number() || !std::isfinite(j[i].get<double>())) {
        schema(at + "[" + std::to_string(i) + "]", "expected a finite number");
      }
      out.push_back(j[i].get<double>());
    }
    return out;
  }
  if (!j.is_object()) schema(at, "expected an array or a {min, max, count} object");
  allow_keys(j, at, {"min", "max", "count"});
  const double lo = finite_number(j, "min", at);
  const double hi = finite_number(j, "max", at);
  const std::size_t n = count(j, "count", at);
  if (n >= 2 && !(hi > lo)) schema(at, "max must exceed min");
  if (n == 1) out.push_back(lo);
  for (std::size_t i = 0; n >= 2 && i < n; ++i) {
    out.push_back(i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

template <class F>
auto physics(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    schema(where, e.what());
  }
}

Potential parse_potential(const json& j, const std::string& where, double mass) {
  const std::string type = text(j, "type", where,
                                {"infinite_well", "barrier", "harmonic", "linear_ramp", "piecewise", "free"});
  if (type == "infinite_well") {
    allow_keys(j, where, {"type", "a"});
    const double a = finite_number(j, "a", where);
    return physics(where, [&] { return Potential::infinite_well(a); });
  }
  if (type == "barrier") {
    allow_keys(j, where, {"type", "V0", "a"});
    const double V0 = finite_number(j, "V0", where);
    const double a = finite_number(j, "a", where);
    return physics(where, [&] { return Potential::barrier(V0, a); });
  }
  if (type == "harmonic") {
    allow_keys(j, where, {"type", "omega"});
    const double omega = finite_number(j, "omega", where);
    return physics(where, [&] { return Potential::harmonic(omega, mass); });
  }
  if (type == "linear_ramp") {
    allow_keys(j, where, {"type", "lambda"});
    const double lambda = finite_number(j, "lambda", where);
    return physics(where, [&] { return Potential::linear_ramp(lambda); });
  }
  if (type == "free") {
    allow_keys(j, where, {"type"});
    return Potential::free();
  }
  allow_keys(j, where, {"type", "segments"});
  if (!j.contains("segments") || !j.at("segments").is_array()) {
    schema(where, "piecewise potential needs a 'segments' array");
  }
  std::vector<Segment> segments;
  const json& list = j.at("segments");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = join(where, "segments[" + std::to_string(i) + "]");
    if (!list[i].is_object()) schema(at, "expected an object");
    allow_keys(list[i], at, {"x_start", "x_end", "V"});
    segments.push_back({number(list[i], "x_start", at), number(list[i], "x_end", at),
                        finite_number(list[i], "V", at)});
  }
  return physics(where, [&] { return Potential::piecewise(std::move(segments)); });
}

GridSpec parse_grid(const json& j, const std::string& where) {
  allow_keys(j, where, {"x_min", "x_max", "n"});
  GridSpec g{finite_number(j, "x_min", where), finite_number(j, "x_max", where), count(j, "n", where)};
  physics(where, [&] { return g.make(); });
  return g;
}

InitialState parse_initial(const json& j, const std::string& where) {
  InitialState s;
  const std::string type = text(j, "type", where, {"gaussian", "eigenstate"});
  if (type == "gaussian") {
    allow_keys(j, where, {"type", "alpha", "k0", "x0"});
    s.kind = InitialState::Kind::gaussian;
    s.alpha = finite_number(j, "alpha", where);
    if (!(s.alpha > 0.0)) schema(join(where, "alpha"), "alpha must be positive");
    s.k0 = finite_number(j, "k0", where, 0.0);
    s.x0 = finite_number(j, "x0", where, 0.0);
  } else {
    allow_keys(j, where, {"type", "level"});
    s.kind = InitialState::Kind::eigenstate;
    s.level = count(j, "level", where, 0);
  }
  return s;
}

}  // namespace

std::string_view to_string(Format format) { return format == Format::csv ? "csv" : "json"; }

Scenario parse_scenario(const std::string& source) {
  json root;
  try {
    root = json::parse(source);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) schema("", "scenario must be a JSON object");

  Scenario s;
  s.command = text(root, "command", "",
                   {"spectrum", "scatter", "evolve", "packet", "blackbody", "uncertainty"});
  s.units = text(root, "units", "", {"natural", "si"});
  s.constants = s.units == "si" ? PhysicalConstants::si() : PhysicalConstants::natural();
  s.mass = finite_number(root, "mass", "", s.constants.mass);
  if (!(s.mass > 0.0)) schema("mass", "mass must be positive");

  if (root.contains("output")) {
    const json& out = object_at(root, "output", "");
    allow_keys(out, "output", {"format", "path"});
    s.format = text(out, "format", "output", {"csv", "json"}, "csv") == "json" ? Format::json : Format::csv;
    if (out.contains("path")) {
      s.path = text(out, "path", "output", {});
      if (s.path->empty()) schema("output.path", "path must not be empty");
    }
  }

  const std::string& c = s.command;
  if (c == "spectrum") {
    allow_keys(root, "", {"command", "units", "mass", "output", "potential", "grid", "states", "extrapolate"});
  } else if (c == "scatter") {
    allow_keys(root, "", {"command", "units", "mass", "output", "potential", "energies"});
  } else if (c == "evolve") {
    allow_keys(root, "", {"command", "units", "mass", "output", "potential", "grid", "initial", "method", "dt",
                          "steps", "observables_every"});
  } else if (c == "packet") {
    allow_keys(root, "", {"command", "units", "mass", "output", "grid", "alpha", "k0", "times"});
  } else if (c == "blackbody") {
    allow_keys(root, "", {"command", "units", "output", "temperature", "frequencies"});
  } else {
    allow_keys(root, "", {"command", "units", "mass", "output", "potential", "grid", "initial"});
  }

  if (c != "blackbody" && c != "packet") {
    if (c == "uncertainty" && !root.contains("potential")) {
      s.potential = Potential::free();
    } else {
      s.potential = parse_potential(object_at(root, "potential", ""), "potential", s.mass);
    }
  }
  if (c != "blackbody" && c != "scatter") s.grid = parse_grid(object_at(root, "grid", ""), "grid");

  if (c == "spectrum") {
    SpectrumSpec spec;
    spec.states = count(root, "states", "");
    if (spec.states < 1) schema("states", "at least one state is required");
    if (spec.states > s.grid->n - 2) schema("states", "more states requested than interior grid points");
    spec.extrapolate = flag(root, "extrapolate", "", true);
    s.spec = spec;
  } else if (c == "scatter") {
    ScatterSpec spec;
    spec.energies = samples(root, "energies", "");
    for (std::size_t i = 0; i < spec.energies.size(); ++i) {
      if (!(spec.energies[i] > 0.0)) schema("energies[" + std::to_string(i) + "]", "energies must be positive");
    }
    s.spec = spec;
  } else if (c == "evolve") {
    EvolveSpec spec;
    spec.initial = parse_initial(object_at(root, "initial", ""), "initial");
    spec.config.method = text(root, "method", "", {"crank_nicolson", "split_step"}) == "split_step"
                             ? Method::split_step
                             : Method::crank_nicolson;
    spec.config.dt = finite_number(root, "dt", "");
    spec.config.steps = count(root, "steps", "");
    spec.config.observables_every = count(root, "observables_every", "", 1);
    try {
      validate(spec.config);
    } catch (const Error& e) {
      schema("", e.what());
    }
    s.spec = spec;
  } else if (c == "packet") {
    PacketSpec spec;
    spec.alpha = finite_number(root, "alpha", "");
    if (!(spec.alpha > 0.0)) schema("alpha", "alpha must be positive");
    spec.k0 = finite_number(root, "k0", "", 0.0);
    spec.times = samples(root, "times", "");
    s.spec = spec;
  } else if (c == "blackbody") {
    BlackbodySpec spec;
    spec.temperature = finite_number(root, "temperature", "");
    if (!(spec.temperature > 0.0)) schema("temperature", "temperature must be positive");
    spec.frequencies = samples(root, "frequencies", "");
    for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
      if (!(spec.frequencies[i] > 0.0)) schema("frequencies[" + std::to_string(i) + "]", "frequencies must be positive");
    }
    s.spec = spec;
  } else {
    UncertaintySpec spec;
    spec.initial = parse_initial(object_at(root, "initial", ""), "initial");
    s.spec = spec;
  }
  return s;
}

}  // namespace qm1d::cli

#include "qm1d/cli/runner.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qm1d/analytic.hpp"
#include "qm1d/errors.hpp"
#include "qm1d/observables.hpp"

namespace qm1d::cli {

namespace fs = std::filesystem;

namespace {

Table plot_header() { return Table{{"series", "x", "t", "value"}, {}}; }

WaveFunction initial_state(const Scenario& s, const InitialState& init) {
  const Grid grid = s.grid->make();
  if (init.kind == InitialState::Kind::eigenstate) {
    const auto H = build_hamiltonian(grid, *s.potential, s.mass, s.constants);
    return solve_bound_states(H, init.level + 1).states[init.level];
  }
  auto params = analytic::packet_params(init.alpha, init.k0, s.constants);
  params.mass = s.mass;
  return normalize(sample(grid, [&](double x) { return analytic::gaussian_packet_x(params, x - init.x0); }));
}

// Closed-form level for the quantum number of spectrum entry k, if known.
std::optional<double> analytic_level(const Scenario& s, std::size_t k, long long& label) {
  const auto& c = s.constants;
  if (const auto* w = s.potential->get_if<InfiniteWell>()) {
    label = static_cast<long long>(k) + 1;
    return analytic::well_energy(static_cast<int>(k) + 1, w->a, c);
  }
  if (const auto* h = s.potential->get_if<Harmonic>()) {
    label = static_cast<long long>(k);
    return analytic::oscillator_energy(static_cast<int>(k), h->omega, c);
  }
  if (const auto* r = s.potential->get_if<LinearRamp>()) {
    label = static_cast<long long>(k) + 1;
    const double zero = boost::math::airy_ai_zero<double>(static_cast<int>(k) + 1);
    const double scale = std::cbrt(c.hbar * c.hbar * r->lambda * r->lambda / (2.0 * s.mass));
    return scale * std::abs(zero);
  }
  label = static_cast<long long>(k);
  return std::nullopt;
}

Outputs run_spectrum(const Scenario& s, const SpectrumSpec& spec) {
  const Grid grid = s.grid->make();
  const Spectrum spectrum =
      spec.extrapolate
          ? solve_extrapolated(grid, *s.potential, s.mass, s.constants, spec.states)
          : solve_bound_states(build_hamiltonian(grid, *s.potential, s.mass, s.constants), spec.states);
  Outputs out{{{"n", "E_numeric", "E_analytic", "rel_error"}, {}}, emit_plot_data(spectrum),
              spectrum.warnings};
  for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
    long long label = 0;
    const auto exact = analytic_level(s, k, label);
    const double e = spectrum.energies[k];
    out.data.add({std::int64_t{label}, e, exact ? Cell{*exact} : Cell{},
                  exact ? Cell{std::abs(e - *exact) / std::abs(*exact)} : Cell{}});
  }
  return out;
}

Outputs run_scatter(const Scenario& s, const ScatterSpec& spec) {
  const auto sweep = transmission_sweep(*s.potential, spec.energies, s.mass, s.constants);
  Outputs out{{{"energy", "R_re", "R_im", "T_re", "T_im", "prob_R", "prob_T", "phase_R", "phase_T",
                "unitarity_defect"},
               {}},
              emit_plot_data(sweep),
              {}};
  for (const auto& row : sweep) {
    out.data.add({row.energy, row.R.real(), row.R.imag(), row.T.real(), row.T.imag(), row.prob_R, row.prob_T,
                  row.phase_R, row.phase_T, row.prob_R + row.prob_T - 1.0});
  }
  return out;
}

Outputs run_evolve(const Scenario& s, const EvolveSpec& spec) {
  const WaveFunction psi0 = initial_state(s, spec.initial);
  const Trajectory traj = evolve(psi0, *s.potential, spec.config, s.mass, s.constants);
  Outputs out{{{"step", "t", "norm", "mean_x", "mean_p", "delta_x", "delta_p", "energy"}, {}},
              emit_plot_data(traj),
              {}};
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const auto& o = traj.observables[i];
    const auto step = static_cast<std::int64_t>(std::llround(traj.times[i] / spec.config.dt));
    out.data.add({step, traj.times[i], o.norm, o.mean_x, o.mean_p, o.delta_x, o.delta_p, o.energy});
  }
  return out;
}

Outputs run_packet(const Scenario& s, const PacketSpec& spec) {
  auto params = analytic::packet_params(spec.alpha, spec.k0, s.constants);
  params.mass = s.mass;
  const Grid grid = s.grid->make();
  Outputs out{{{"t", "mean_x", "width", "delta_x"}, {}}, plot_header(), {}};
  for (double t : spec.times) {
    out.data.add({t, params.group_velocity() * t, analytic::packet_width(params, t),
                  analytic::packet_sigma_x(params, t)});
  }
  for (double t : spec.times) {
    const WaveFunction psi =
        normalize(sample(grid, [&](double x) { return analytic::free_packet_xt(params, x, t); }));
    for (std::size_t i = 0; i < grid.size(); ++i) out.plot.add({"density", grid.x(i), t, std::norm(psi[i])});
  }
  for (double t : spec.times) out.plot.add({"delta_x", Cell{}, t, analytic::packet_sigma_x(params, t)});
  return out;
}

Outputs run_blackbody(const Scenario& s, const BlackbodySpec& spec) {
  Outputs out{{{"nu", "planck", "rayleigh_jeans", "ratio"}, {}}, plot_header(), {}};
  for (double nu : spec.frequencies) {
    const double p = analytic::blackbody_density(nu, spec.temperature, analytic::RadiationModel::planck, s.constants);
    const double r =
        analytic::blackbody_density(nu, spec.temperature, analytic::RadiationModel::rayleigh_jeans, s.constants);
    out.data.add({nu, p, r, p / r});
  }
  for (double nu : spec.frequencies) {
    out.plot.add({"planck", nu, Cell{},
                  analytic::blackbody_density(nu, spec.temperature, analytic::RadiationModel::planck, s.constants)});
  }
  for (double nu : spec.frequencies) {
    out.plot.add({"rayleigh_jeans", nu, Cell{},
                  analytic::blackbody_density(nu, spec.temperature, analytic::RadiationModel::rayleigh_jeans,
                                              s.constants)});
  }
  return out;
}

Outputs run_uncertainty(const Scenario& s, const UncertaintySpec& spec) {
  const WaveFunction psi = initial_state(s, spec.initial);
  const Grid& grid = psi.grid();
  const auto X = LinearOperator::position(grid);
  const auto P = LinearOperator::momentum(grid, s.constants);
  const auto H = LinearOperator::hamiltonian(build_hamiltonian(grid, *s.potential, s.mass, s.constants));
  Outputs out{{{"delta_x", "delta_p", "product_xp", "hbar_over_2", "mean_p", "delta_E", "product_xE",
                "bound_xE", "commutator_xH_im", "hbar_p_over_m"},
               {}},
              plot_header(),
              {}};
  const double hbar = s.constants.hbar;
  const double dx = uncertainty(X, psi);
  const double dp = uncertainty(P, psi);
  const double mean_p = std::real(expectation(P, psi, &out.warnings));
  const double dE = uncertainty(H, psi);
  const complex comm = commutator_expectation(X, H, psi);
  out.data.add({dx, dp, dx * dp, hbar / 2.0, mean_p, dE, dx * dE, hbar * std::abs(mean_p) / (2.0 * s.mass),
                comm.imag(), hbar * mean_p / s.mass});

  for (std::size_t i = 0; i < grid.size(); ++i) out.plot.add({"density", grid.x(i), Cell{}, std::norm(psi[i])});
  const WaveFunction phi = to_momentum_space(psi, s.constants);
  for (std::size_t j = 0; j < phi.size(); ++j) {
    out.plot.add({"momentum_density", phi.coordinate(j), Cell{}, std::norm(phi[j])});
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::ios_base::failure("error while reading '" + path + "'");
  return ss.str();
}

int report(std::ostream& err, int status, std::string_view kind, const std::string& message) {
  nlohmann::json j;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", status}};
  err << j.dump() << '\n';
  return status;
}

void write_atomically(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> staged;
  try {
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".partial";
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw std::ios_base::failure("cannot write '" + tmp.string() + "'");
      staged.push_back(tmp);
      f << content;
      f.close();
      if (!f) throw std::ios_base::failure("error while writing '" + tmp.string() + "'");
    }
    for (std::size_t i = 0; i < files.size(); ++i) fs::rename(staged[i], files[i].first);
  } catch (...) {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
    throw;
  }
}

}  // namespace

Table emit_plot_data(const Spectrum& spectrum) {
  Table t = plot_header();
  for (std::size_t k = 0; k < spectrum.states.size(); ++k) {
    const WaveFunction& psi = spectrum.states[k];
    const std::string name = "psi_" + std::to_string(k);
    for (std::size_t i = 0; i < psi.size(); ++i) t.add({name, psi.grid().x(i), Cell{}, psi[i].real()});
  }
  return t;
}

Table emit_plot_data(const Trajectory& traj) {
  Table t = plot_header();
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    const WaveFunction& psi = traj.snapshots[s];
    for (std::size_t i = 0; i < psi.size(); ++i) {
      t.add({"density", psi.grid().x(i), traj.times[s], std::norm(psi[i])});
    }
  }
  const std::pair<const char*, double ObservableSample::*> series[] = {
      {"norm", &ObservableSample::norm},       {"mean_x", &ObservableSample::mean_x},
      {"mean_p", &ObservableSample::mean_p},   {"delta_x", &ObservableSample::delta_x},
      {"delta_p", &ObservableSample::delta_p}, {"energy", &ObservableSample::energy}};
  for (const auto& [name, member] : series) {
    for (std::size_t s = 0; s < traj.observables.size(); ++s) {
      t.add({name, Cell{}, traj.times[s], traj.observables[s].*member});
    }
  }
  return t;
}

Table emit_plot_data(std::span<const SweepRow> sweep) {
  Table t = plot_header();
  for (const auto& row : sweep) t.add({"prob_R", row.energy, Cell{}, row.prob_R});
  for (const auto& row : sweep) t.add({"prob_T", row.energy, Cell{}, row.prob_T});
  return t;
}

Outputs execute(const Scenario& scenario) {
  return std::visit(
      [&](const auto& spec) -> Outputs {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, SpectrumSpec>) return run_spectrum(scenario, spec);
        if constexpr (std::is_same_v<T, ScatterSpec>) return run_scatter(scenario, spec);
        if constexpr (std::is_same_v<T, EvolveSpec>) return run_evolve(scenario, spec);
        if constexpr (std::is_same_v<T, PacketSpec>) return run_packet(scenario, spec);
        if constexpr (std::is_same_v<T, BlackbodySpec>) return run_blackbody(scenario, spec);
        if constexpr (std::is_same_v<T, UncertaintySpec>) return run_uncertainty(scenario, spec);
      },
      scenario.spec);
}

int validate_scenario(const std::string& path, std::ostream& out, std::ostream& err) {
  std::string source;
  try {
    source = read_file(path);
  } catch (const std::exception& e) {
    return report(err, kExitIo, "io", e.what());
  }
  try {
    const Scenario s = parse_scenario(source);
    out << "valid " << s.command << " scenario\n";
    return kExitOk;
  } catch (const SchemaError& e) {
    return report(err, kExitSchema, "schema", e.what());
  }
}

int run_scenario(const RunOptions& options, std::ostream& out, std::ostream& err) {
  std::string source;
  try {
    source = read_file(options.scenario_path);
  } catch (const std::exception& e) {
    return report(err, kExitIo, "io", e.what());
  }

  Scenario scenario;
  try {
    scenario = parse_scenario(source);
  } catch (const SchemaError& e) {
    return report(err, kExitSchema, "schema", e.what());
  }
  const Format format = options.format.value_or(scenario.format);

  Outputs result;
  try {
    result = execute(scenario);
  } catch (const Error& e) {
    return report(err, kExitNumerical, to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report(err, kExitNumerical, "numerical", e.what());
  }

  fs::path dir = ".";
  if (options.out_dir) {
    dir = *options.out_dir;
  } else if (const char* env = std::getenv(kOutDirVariable); env && *env) {
    dir = env;
  }
  const fs::path stem_path = scenario.path ? fs::path(*scenario.path) : fs::path(options.scenario_path).stem();
  const fs::path stem = stem_path.is_absolute() ? stem_path : dir / stem_path;
  const std::string ext = format == Format::csv ? ".csv" : ".json";

  std::ostringstream data, plot;
  write_table(result.data, format, data);
  write_table(result.plot, format, plot);

  fs::path data_path = stem;
  data_path += ext;
  fs::path plot_path = stem;
  plot_path += "_plot" + ext;
  fs::path meta_path = stem;
  meta_path += ".meta.json";

  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["scenario"] = options.scenario_path;
  meta["command"] = scenario.command;
  meta["units"] = scenario.units;
  meta["format"] = std::string(to_string(format));
  meta["files"] = {data_path.filename().string(), plot_path.filename().string()};
  meta["warnings"] = result.warnings;
  meta["rows"] = result.data.rows.size();
  meta["generated_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
          .count();

  try {
    if (stem.has_parent_path()) fs::create_directories(stem.parent_path());
    write_atomically({{data_path, data.str()}, {plot_path, plot.str()}, {meta_path, meta.dump(2) + "\n"}});
  } catch (const std::exception& e) {
    return report(err, kExitIo, "io", e.what());
  }
  out << data_path.string() << '\n' << plot_path.string() << '\n';
  return kExitOk;
}

}  // namespace qm1d::cli

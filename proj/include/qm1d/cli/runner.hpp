#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "qm1d/cli/scenario.hpp"
#include "qm1d/cli/table.hpp"
#include "qm1d/eigensolver.hpp"
#include "qm1d/evolution.hpp"
#include "qm1d/scattering.hpp"

namespace qm1d::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirVariable = "QM1D_OUT_DIR";

struct Outputs {
  Table data;
  Table plot;
  Warnings warnings;
};

/// Runs the computation of a validated scenario. Library errors propagate.
Outputs execute(const Scenario& scenario);

/// Long-format (series, x, t, value) tables.
Table emit_plot_data(const Spectrum& spectrum);
Table emit_plot_data(const Trajectory& trajectory);
Table emit_plot_data(std::span<const SweepRow> sweep);

struct RunOptions {
  std::string scenario_path;
  std::optional<std::string> out_dir;
  std::optional<Format> format;
};

/// Writes <stem>.<ext>, <stem>_plot.<ext> and <stem>.meta.json, or nothing
/// on failure. Errors go to `err` as a JSON object. Returns the exit status.
int run_scenario(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Schema check only; no computation and no output files.
int validate_scenario(const std::string& path, std::ostream& out, std::ostream& err);

}  // namespace qm1d::cli

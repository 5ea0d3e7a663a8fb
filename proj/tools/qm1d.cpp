#include <CLI11.hpp>
#include <iostream>

#include "qm1d/cli/runner.hpp"

int main(int argc, char** argv) {
  using namespace qm1d::cli;
  CLI::App app{"One-dimensional quantum mechanics scenario runner"};
  app.require_subcommand(1);

  RunOptions run;
  std::string format;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its tables");
  run_cmd->add_option("scenario", run.scenario_path, "Scenario JSON file")->required();
  run_cmd->add_option("--out", run.out_dir, "Output directory (default: $QM1D_OUT_DIR or .)");
  run_cmd->add_option("--format", format, "Output format, overriding the scenario")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario against the schema");
  validate_cmd->add_option("scenario", validate_path, "Scenario JSON file")->required();

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  if (*run_cmd) {
    if (!format.empty()) run.format = format == "json" ? Format::json : Format::csv;
    return run_scenario(run, std::cout, std::cerr);
  }
  if (*validate_cmd) return validate_scenario(validate_path, std::cout, std::cerr);
  std::cout << "qm1d " << kVersion << '\n';
  return 0;
}

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "biharm/cli.hpp"

int main(int argc, char** argv) {
  using biharm::cli::Command;

  CLI::App app{"Biharmonic scattering by clamped cavities: solver, oracle and identity checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "biharm 1.0.0");

  std::string config;
  std::optional<int> n;
  std::optional<std::string> out;
  bool no_timing = false;

  const std::pair<const char*, const char*> commands[] = {
      {"solve", "Solve the scattering problem and write far-field and field CSVs"},
      {"verify", "Run the scenario's checks"},
      {"oracle", "Write the Fourier-Bessel reference for a centered circle"},
      {"phaseless", "Write phaseless point-source data for each cavity"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config, "Scenario file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--n", n, "Override the node parameter (2n quadrature nodes)");
    sub->add_option("--out", out, "Override the output directory");
    sub->add_flag("--no-timing", no_timing, "Write wall_time_s as 0 so reports are byte-stable");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return biharm::cli::kExitError;
  }

  biharm::cli::RunOptions opts;
  const std::string name = app.get_subcommands().front()->get_name();
  opts.command = name == "solve"    ? Command::Solve
                 : name == "oracle" ? Command::Oracle
                 : name == "phaseless" ? Command::Phaseless
                                       : Command::Verify;
  opts.n = n;
  opts.out = out;
  opts.timing = !no_timing;
  return biharm::cli::run(config, opts, std::cout, std::cerr);
}

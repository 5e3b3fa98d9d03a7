#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nshyp/cli/commands.hpp"
#include "nshyp/cli/csv.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Analysis of V_t + V_1 V_x = Q V and its parabolic counterpart"};
  app.set_version_flag("--version", nshyp::cli::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a JSON configuration");
  run->add_option("config", config_path, "Configuration file")->required();

  auto* models = app.add_subcommand("models", "Print the model catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : nshyp::cli::exit_config;
  }

  if (*run) return nshyp::cli::run_config_file(config_path, std::cout, std::cerr);
  if (*models)
    return nshyp::cli::run_config({{"command", "models"}}, std::cout, std::cerr);
  return nshyp::cli::exit_config;
}

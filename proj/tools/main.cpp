#include <iostream>

#include <CLI11.hpp>

#include "muskat/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Muskat interface simulations, diagnostics and constant checks"};
  app.require_subcommand(1);

  std::string config;
  auto* sim = app.add_subcommand("simulate", "Run a simulation described by a config file");
  sim->add_option("config", config, "Config file")->required();

  double delta = 0.0, tol = 1e-15;
  auto* cst = app.add_subcommand("constants", "Compute c0(delta) and check the published constants");
  cst->add_option("--delta", delta, "Exponent offset delta >= 0")->capture_default_str();
  cst->add_option("--tol", tol, "Bisection tolerance")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Run the cross-validation battery on a config");
  ver->add_option("config", config, "Config file")->required();

  std::string run_dir;
  auto* plt = app.add_subcommand("plot", "Write SVG plots for a run directory");
  plt->add_option("rundir", run_dir, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  using namespace muskat::cli;
  if (*sim) return cmd_simulate(config, std::cout, std::cerr);
  if (*cst) return cmd_constants(delta, tol, std::cout);
  if (*ver) return cmd_verify(config, std::cout, std::cerr);
  return cmd_plot(run_dir, std::cout, std::cerr);
}

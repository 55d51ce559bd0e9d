#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "csa/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Coded slotted ALOHA with per-class packet loss: asymptotic analysis, "
      "access optimization and finite-population SIC simulation"};

  std::string mode;
  app.add_option("--mode", mode, "evolve | sweep | simulate | optimize | dump")->required();

  std::string preset, config_path;
  app.add_option("--preset", preset, "built-in scenario: scenario1, scenario2 or scenario3");
  app.add_option("--config", config_path, "config file path");

  csa::RunSpec spec;
  app.add_option("--n", spec.num_users, "number of users for simulate")
      ->capture_default_str();
  app.add_option("--trials", spec.trials, "Monte Carlo trials")->capture_default_str();
  app.add_option("--seed", spec.seed, "master seed")->capture_default_str();
  app.add_option("--eps-min", spec.eps_min, "sweep lower epsilon (M/N - 1)")
      ->capture_default_str();
  app.add_option("--eps-max", spec.eps_max, "sweep upper epsilon")->capture_default_str();
  app.add_option("--eps-steps", spec.eps_steps, "sweep sample count")->capture_default_str();
  app.add_option("--alpha-max", spec.grid.alpha_max, "access-constant grid upper bound")
      ->capture_default_str();
  app.add_option("--alpha-step", spec.grid.alpha_step, "access-constant grid step")
      ->capture_default_str();
  double target_pr = -1.0;
  auto* target_opt =
      app.add_option("--target-pr", target_pr, "resolution-probability floor for optimize");
  app.add_option("--out", spec.out_path, "CSV output path");
  app.add_option("--max-iter", spec.max_iter, "evolution iteration cap")->capture_default_str();
  app.add_option("--tol", spec.tol, "evolution convergence tolerance")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    spec.mode = csa::parse_run_mode(mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  spec.preset = preset;
  spec.config_path = config_path;
  if (target_opt->count() > 0) spec.target_resolution = target_pr;

  return csa::run(spec, std::cout, std::cerr);
}

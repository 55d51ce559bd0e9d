#ifndef CSA_RUN_HPP
#define CSA_RUN_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "csa/density_evolution.hpp"
#include "csa/optimizer.hpp"

namespace csa {

enum class RunMode { evolve, sweep, simulate, optimize, dump };

RunMode parse_run_mode(const std::string& name);

/** One orchestrated run: which computation, on which configuration, with
 *  which mode-specific parameters, and where the CSV goes. */
struct RunSpec {
  RunMode mode = RunMode::evolve;
  std::string preset;       // one of the compiled-in scenario names, or
  std::string config_path;  // a config file path (exactly one must be set)

  std::size_t num_users = 10000;  // simulate
  std::size_t trials = 100;       // simulate
  std::uint64_t seed = 1;         // simulate

  double eps_min = -0.5;          // sweep
  double eps_max = 1.5;           // sweep
  std::size_t eps_steps = 41;     // sweep

  GridSpec grid;                        // sweep, optimize
  std::optional<double> target_resolution;  // optimize: floor on P_R

  std::string out_path;           // CSV destination; empty writes no file

  std::size_t max_iter = kDefaultMaxIter;
  double tol = kDefaultTol;
};

/** Executes the run, printing a summary table to out and any error to err.
 *  Returns the process exit status (0 on success). */
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace csa

#endif

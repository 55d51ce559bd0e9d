#ifndef CSA_OPTIMIZER_HPP
#define CSA_OPTIMIZER_HPP

#include <cstddef>
#include <vector>

#include "csa/density_evolution.hpp"
#include "csa/model.hpp"

namespace csa {

/** Coarse search grid for the access constants: every entry of the access
 *  matrix ranges over {0, step, 2 step, ..., max}. */
struct GridSpec {
  double alpha_max = 8.0;
  double alpha_step = 0.1;
};

struct AlphaOptimum {
  AccessMatrix alpha;
  double throughput = 0.0;
  double resolution = 0.0;
  std::vector<double> per_class_resolution;
  std::vector<double> slot_degrees;  // beta_j at the optimum
};

struct ConstrainedOptimum {
  bool feasible = false;
  AccessMatrix alpha;
  double throughput = 0.0;
  double resolution = 0.0;
};

struct SweepSample {
  double epsilon = 0.0;
  AccessMatrix alpha;
  double throughput = 0.0;
  double resolution = 0.0;
  std::vector<double> slot_degrees;
};

struct OptimizationReport {
  AccessMatrix best_alpha;
  double best_epsilon = 0.0;
  double best_throughput = 0.0;
  double best_resolution = 0.0;
  std::vector<double> per_class_resolution;
  std::vector<SweepSample> sweep_samples;
};

/** Maximizes asymptotic throughput over the access constants at a fixed
 *  epsilon: coarse grid scan followed by two successive 10x finer local
 *  refinements around the best cell. Ties go to the smaller sum of access
 *  constants. base supplies the class structure; its access values and
 *  epsilon are ignored. */
AlphaOptimum optimize_alpha_at_eps(const SystemConfig& base, double epsilon,
                                   const GridSpec& grid,
                                   std::size_t max_iter = kDefaultMaxIter,
                                   double tol = kDefaultTol);

/** Runs optimize_alpha_at_eps at eps_steps evenly spaced epsilon samples over
 *  [eps_lo, eps_hi] (inclusive) and reports the global throughput optimum
 *  along with every curve sample. */
OptimizationReport sweep_eps(const SystemConfig& base, double eps_lo, double eps_hi,
                             std::size_t eps_steps, const GridSpec& grid,
                             std::size_t max_iter = kDefaultMaxIter,
                             double tol = kDefaultTol);

/** Maximizes throughput subject to an aggregate resolution-probability floor
 *  over the coarse grid alone (no refinement, so that tightening the floor
 *  can never raise the returned throughput). feasible = false when no grid
 *  point satisfies the floor. */
ConstrainedOptimum optimize_with_resolution_floor(const SystemConfig& base, double epsilon,
                                                  double target_resolution,
                                                  const GridSpec& grid,
                                                  std::size_t max_iter = kDefaultMaxIter,
                                                  double tol = kDefaultTol);

}  // namespace csa

#endif

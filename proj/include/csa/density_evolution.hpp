#ifndef CSA_DENSITY_EVOLUTION_HPP
#define CSA_DENSITY_EVOLUTION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "csa/model.hpp"

namespace csa {

inline constexpr std::size_t kDefaultMaxIter = 10000;
inline constexpr double kDefaultTol = 1e-10;

/** Outcome of the and-or tree iteration. */
struct EvolutionResult {
  /** trajectories[l][i] = y_l(i), the unresolved probability of a class-l
   *  user after i iterations; trajectories[l][0] = 1 and each sequence is
   *  non-increasing. */
  std::vector<std::vector<double>> trajectories;
  /** P_Rl = 1 - y_l at the final iterate. */
  std::vector<double> resolution_probs;
  double aggregate_resolution = 0.0;  // P_R = sum_l a_l P_Rl
  double throughput = 0.0;            // T = P_R / (1+eps)
  std::size_t iterations_used = 0;
  bool converged = false;
  double residual = 0.0;              // fixed-point residual at the final iterate
};

/** Erasure probability r_j emitted by a class-j slot given the per-class
 *  unresolved probabilities y. Throws std::domain_error when beta_j = 0
 *  (no transmissions reach this slot class). */
double slot_message(const SystemConfig& config, std::size_t j, std::span<const double> y);

/** Iterates y_l(i) = prod_j lambda_lj(r_j(i-1)) from y(0) = 1 until the
 *  largest per-class change drops below tol or max_iter is reached.
 *  Slot classes with beta_j = 0 carry no edges and are skipped. */
EvolutionResult evolve(const SystemConfig& config, std::size_t max_iter = kDefaultMaxIter,
                       double tol = kDefaultTol);

/** T = (sum_l a_l P_Rl) / (1+eps). */
double throughput(const SystemConfig& config, std::span<const double> resolution_probs);

/** max_l |y_l - prod_j lambda_lj(r_j(y))|, zero exactly at a fixed point. */
double fixed_point_residual(const SystemConfig& config, std::span<const double> y);

}  // namespace csa

#endif

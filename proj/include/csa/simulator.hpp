#ifndef CSA_SIMULATOR_HPP
#define CSA_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "csa/model.hpp"

namespace csa {

struct Edge {
  std::uint32_t user = 0;
  std::uint32_t slot = 0;

  bool operator==(const Edge&) const = default;
};

/** Finite bipartite contention graph: which user transmitted in which slot,
 *  and which replicas are noise-corrupted. */
struct ContentionGraph {
  std::size_t num_users = 0;
  std::size_t num_slots = 0;
  std::size_t num_user_classes = 0;
  std::size_t num_slot_classes = 0;
  std::vector<std::uint32_t> user_class_of;  // size num_users
  std::vector<std::uint32_t> slot_class_of;  // size num_slots
  std::vector<Edge> edges;                   // no duplicate (user, slot) pairs
  std::vector<std::uint8_t> lost;            // per edge: replica erased by noise
};

struct TrialOutcome {
  std::vector<std::uint8_t> resolved;  // per user
  double resolved_fraction = 0.0;
  std::vector<double> per_class_resolved_fraction;
  double throughput = 0.0;             // resolved count / num_slots
  std::size_t peel_rounds = 0;
};

/** Aggregate over independent trials: sample means with standard errors. */
struct TrialStats {
  std::size_t trials = 0;
  double mean_resolved_fraction = 0.0;
  double stderr_resolved_fraction = 0.0;
  std::vector<double> mean_per_class_resolved;
  std::vector<double> stderr_per_class_resolved;
  double mean_throughput = 0.0;
  double stderr_throughput = 0.0;
};

/** SplitMix64 finalizer. */
std::uint64_t splitmix64(std::uint64_t x);

/** Seed of trial t in the stream rooted at master_seed: element t of the
 *  SplitMix64 sequence. Reproducible for a given (master_seed, t) pair. */
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t t);

/** Apportions total items over the given fractions by largest remainder;
 *  the returned counts sum to total exactly. */
std::vector<std::size_t> largest_remainder_counts(std::span<const double> fractions,
                                                  std::size_t total);

/** Samples a contention graph: M = round((1+eps)N) slots, classes sized by
 *  largest-remainder rounding, and an edge for each (user, slot) pair
 *  independently with probability p_lj = alpha_lj/(a_l N); each edge's lost
 *  flag is an independent Bernoulli(e_l) draw. Fully determined by seed.
 *  Throws when some p_lj exceeds 1 or a user class rounds to zero members. */
ContentionGraph build_graph(const SystemConfig& config, std::size_t num_users,
                            std::uint64_t seed);

/** Iterative SIC: repeatedly resolve the survivor of a degree-1 slot (unless
 *  that replica is lost, which exhausts the slot) and remove all of the
 *  resolved user's edges. The resolved set does not depend on processing
 *  order. */
TrialOutcome peel(const ContentionGraph& graph);

/** Same decoder with the slot processing order shuffled by shuffle_seed;
 *  resolves the identical user set. */
TrialOutcome peel(const ContentionGraph& graph, std::uint64_t shuffle_seed);

/** Runs independent trials with per-trial seeds derived from master_seed and
 *  aggregates the outcomes. */
TrialStats run_trials(const SystemConfig& config, std::size_t num_users, std::size_t trials,
                      std::uint64_t master_seed);

}  // namespace csa

#endif

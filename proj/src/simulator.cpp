#include "csa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace csa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t t) {
  return splitmix64(master_seed + t * 0x9E3779B97F4A7C15ULL);
}

std::vector<std::size_t> largest_remainder_counts(std::span<const double> fractions,
                                                  std::size_t total) {
  const std::size_t n = fractions.size();
  std::vector<std::size_t> counts(n);
  std::vector<double> remainders(n);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = fractions[i] * static_cast<double>(total);
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    remainders[i] = exact - std::floor(exact);
    assigned += counts[i];
  }
  // Hand out the leftovers by descending remainder, lower index first on ties.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < total; ++k) {
    ++counts[order[k % n]];
    ++assigned;
  }
  return counts;
}

ContentionGraph build_graph(const SystemConfig& config, std::size_t num_users,
                            std::uint64_t seed) {
  validate(config);
  const std::size_t L = config.num_user_classes();
  const std::size_t J = config.num_slot_classes();
  if (num_users < L)
    throw std::invalid_argument("build_graph: need at least one user per class");

  const double slots_exact = (1.0 + config.epsilon) * static_cast<double>(num_users);
  const auto num_slots = static_cast<std::size_t>(std::llround(slots_exact));
  if (num_slots < 1) throw std::invalid_argument("build_graph: contention period rounds to zero slots");

  std::vector<double> user_fractions(L), slot_fractions(J);
  for (std::size_t l = 0; l < L; ++l) user_fractions[l] = config.user_classes[l].fraction;
  for (std::size_t j = 0; j < J; ++j) slot_fractions[j] = config.slot_classes[j].fraction;
  const auto user_counts = largest_remainder_counts(user_fractions, num_users);
  const auto slot_counts = largest_remainder_counts(slot_fractions, num_slots);
  for (std::size_t l = 0; l < L; ++l)
    if (user_counts[l] == 0)
      throw std::invalid_argument("build_graph: user class " + std::to_string(l) +
                                  " rounds to zero members at N = " + std::to_string(num_users));

  // p_lj, with the > 1 feasibility check.
  std::vector<double> access_prob(L * J);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < J; ++j)
      access_prob[l * J + j] = access_probability(config, l, j, num_users);

  ContentionGraph g;
  g.num_users = num_users;
  g.num_slots = num_slots;
  g.num_user_classes = L;
  g.num_slot_classes = J;
  g.user_class_of.resize(num_users);
  g.slot_class_of.resize(num_slots);

  std::vector<std::size_t> slot_base(J);
  {
    std::size_t u = 0;
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t k = 0; k < user_counts[l]; ++k) g.user_class_of[u++] = static_cast<std::uint32_t>(l);
    std::size_t s = 0;
    for (std::size_t j = 0; j < J; ++j) {
      slot_base[j] = s;
      for (std::size_t k = 0; k < slot_counts[j]; ++k) g.slot_class_of[s++] = static_cast<std::uint32_t>(j);
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> picked;
  for (std::size_t u = 0; u < num_users; ++u) {
    const std::size_t l = g.user_class_of[u];
    std::bernoulli_distribution lose(config.user_classes[l].loss_prob);
    for (std::size_t j = 0; j < J; ++j) {
      const std::size_t span = slot_counts[j];
      if (span == 0) continue;
      // The edge count into this slot class is Binomial(span, p_lj) and the
      // hit slots are uniform without replacement, which matches independent
      // per-pair Bernoulli(p_lj) sampling exactly.
      std::binomial_distribution<int> degree(static_cast<int>(span), access_prob[l * J + j]);
      const auto d = static_cast<std::uint32_t>(degree(rng));
      picked.clear();
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(span - 1));
      while (picked.size() < d) {
        const std::uint32_t s = pick(rng);
        if (std::find(picked.begin(), picked.end(), s) == picked.end()) picked.push_back(s);
      }
      for (const std::uint32_t s : picked) {
        g.edges.push_back({static_cast<std::uint32_t>(u),
                           static_cast<std::uint32_t>(slot_base[j] + s)});
        g.lost.push_back(lose(rng) ? 1 : 0);
      }
    }
  }
  return g;
}

namespace {

TrialOutcome peel_impl(const ContentionGraph& g, std::mt19937_64* shuffle_rng) {
  const std::size_t N = g.num_users;
  const std::size_t M = g.num_slots;
  const std::size_t E = g.edges.size();

  // CSR adjacency for both sides.
  std::vector<std::uint32_t> slot_off(M + 1, 0), user_off(N + 1, 0);
  for (const Edge& e : g.edges) {
    ++slot_off[e.slot + 1];
    ++user_off[e.user + 1];
  }
  for (std::size_t i = 0; i < M; ++i) slot_off[i + 1] += slot_off[i];
  for (std::size_t i = 0; i < N; ++i) user_off[i + 1] += user_off[i];
  std::vector<std::uint32_t> slot_adj(E), user_adj(E);
  {
    std::vector<std::uint32_t> sp(slot_off.begin(), slot_off.end() - 1);
    std::vector<std::uint32_t> up(user_off.begin(), user_off.end() - 1);
    for (std::uint32_t k = 0; k < E; ++k) {
      slot_adj[sp[g.edges[k].slot]++] = k;  // edge ids per slot
      user_adj[up[g.edges[k].user]++] = k;  // edge ids per user
    }
  }

  std::vector<std::uint32_t> degree(M);
  for (std::size_t s = 0; s < M; ++s) degree[s] = slot_off[s + 1] - slot_off[s];

  TrialOutcome outcome;
  outcome.resolved.assign(N, 0);

  std::vector<std::uint32_t> frontier, next;
  for (std::uint32_t s = 0; s < M; ++s)
    if (degree[s] == 1) frontier.push_back(s);

  std::size_t resolved_count = 0;
  while (!frontier.empty()) {
    if (shuffle_rng) std::shuffle(frontier.begin(), frontier.end(), *shuffle_rng);
    std::size_t resolved_this_round = 0;
    next.clear();
    for (const std::uint32_t s : frontier) {
      if (degree[s] != 1) continue;  // drained meanwhile
      for (std::uint32_t i = slot_off[s]; i < slot_off[s + 1]; ++i) {
        const std::uint32_t k = slot_adj[i];
        const std::uint32_t u = g.edges[k].user;
        if (outcome.resolved[u]) continue;
        // Sole survivor found. A lost replica exhausts the slot for good;
        // a clean one resolves the user, and SIC removes all its edges.
        if (!g.lost[k]) {
          outcome.resolved[u] = 1;
          ++resolved_count;
          ++resolved_this_round;
          for (std::uint32_t i2 = user_off[u]; i2 < user_off[u + 1]; ++i2) {
            const std::uint32_t s2 = g.edges[user_adj[i2]].slot;
            if (--degree[s2] == 1) next.push_back(s2);
          }
        }
        break;
      }
    }
    if (resolved_this_round > 0) ++outcome.peel_rounds;
    frontier.swap(next);
  }

  outcome.resolved_fraction =
      N > 0 ? static_cast<double>(resolved_count) / static_cast<double>(N) : 0.0;
  outcome.throughput =
      M > 0 ? static_cast<double>(resolved_count) / static_cast<double>(M) : 0.0;
  std::vector<std::size_t> class_size(g.num_user_classes, 0), class_resolved(g.num_user_classes, 0);
  for (std::size_t u = 0; u < N; ++u) {
    ++class_size[g.user_class_of[u]];
    if (outcome.resolved[u]) ++class_resolved[g.user_class_of[u]];
  }
  outcome.per_class_resolved_fraction.resize(g.num_user_classes);
  for (std::size_t l = 0; l < g.num_user_classes; ++l)
    outcome.per_class_resolved_fraction[l] =
        class_size[l] > 0
            ? static_cast<double>(class_resolved[l]) / static_cast<double>(class_size[l])
            : 0.0;
  return outcome;
}

}  // namespace

TrialOutcome peel(const ContentionGraph& graph) { return peel_impl(graph, nullptr); }

TrialOutcome peel(const ContentionGraph& graph, std::uint64_t shuffle_seed) {
  std::mt19937_64 rng(shuffle_seed);
  return peel_impl(graph, &rng);
}

TrialStats run_trials(const SystemConfig& config, std::size_t num_users, std::size_t trials,
                      std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("run_trials: need at least one trial");
  const std::size_t L = config.num_user_classes();

  std::vector<double> sum(2 + L, 0.0), sumsq(2 + L, 0.0);  // resolved, throughput, per class
  for (std::size_t t = 0; t < trials; ++t) {
    const ContentionGraph g = build_graph(config, num_users, trial_seed(master_seed, t));
    const TrialOutcome o = peel(g);
    const double vals0[2] = {o.resolved_fraction, o.throughput};
    for (std::size_t i = 0; i < 2; ++i) {
      sum[i] += vals0[i];
      sumsq[i] += vals0[i] * vals0[i];
    }
    for (std::size_t l = 0; l < L; ++l) {
      sum[2 + l] += o.per_class_resolved_fraction[l];
      sumsq[2 + l] += o.per_class_resolved_fraction[l] * o.per_class_resolved_fraction[l];
    }
  }

  const auto n = static_cast<double>(trials);
  auto mean = [&](std::size_t i) { return sum[i] / n; };
  auto stderr_of = [&](std::size_t i) {
    if (trials < 2) return 0.0;
    const double var = std::max(0.0, (sumsq[i] - sum[i] * sum[i] / n) / (n - 1.0));
    return std::sqrt(var / n);
  };

  TrialStats stats;
  stats.trials = trials;
  stats.mean_resolved_fraction = mean(0);
  stats.stderr_resolved_fraction = stderr_of(0);
  stats.mean_throughput = mean(1);
  stats.stderr_throughput = stderr_of(1);
  stats.mean_per_class_resolved.resize(L);
  stats.stderr_per_class_resolved.resize(L);
  for (std::size_t l = 0; l < L; ++l) {
    stats.mean_per_class_resolved[l] = mean(2 + l);
    stats.stderr_per_class_resolved[l] = stderr_of(2 + l);
  }
  return stats;
}

}  // namespace csa

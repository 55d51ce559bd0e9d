#include "csa/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csa/degree.hpp"

namespace csa {

namespace {

// Writes a flat row-major alpha vector into the config's access matrix.
void apply_alpha(SystemConfig& cfg, std::span<const double> alpha) {
  const std::size_t J = cfg.num_slot_classes();
  for (std::size_t l = 0; l < cfg.num_user_classes(); ++l)
    for (std::size_t j = 0; j < J; ++j) cfg.access(l, j) = alpha[l * J + j];
}

struct BestPoint {
  std::vector<double> alpha;
  double throughput = -std::numeric_limits<double>::infinity();
  double resolution = 0.0;
  double alpha_sum = std::numeric_limits<double>::infinity();

  // New winner on strictly larger throughput; ties go to fewer transmissions.
  bool improves(double t, double sum) const {
    return t > throughput || (t == throughput && sum < alpha_sum);
  }
};

// Enumerates the Cartesian grid {lo_k, lo_k+step, ..., hi_k} over all access
// entries, evaluating the evolution at each point.
void scan_grid(SystemConfig& cfg, std::span<const double> lo, std::span<const double> hi,
               double step, std::size_t max_iter, double tol, BestPoint& best) {
  const std::size_t dims = lo.size();
  std::vector<std::size_t> steps(dims);
  for (std::size_t k = 0; k < dims; ++k)
    steps[k] = static_cast<std::size_t>(std::floor((hi[k] - lo[k]) / step + 0.5)) + 1;

  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> alpha(dims, 0.0);
  for (;;) {
    double sum = 0.0;
    for (std::size_t k = 0; k < dims; ++k) {
      alpha[k] = lo[k] + static_cast<double>(idx[k]) * step;
      sum += alpha[k];
    }
    apply_alpha(cfg, alpha);
    const EvolutionResult r = evolve(cfg, max_iter, tol);
    if (best.improves(r.throughput, sum)) {
      best.alpha = alpha;
      best.throughput = r.throughput;
      best.resolution = r.aggregate_resolution;
      best.alpha_sum = sum;
    }
    // odometer
    std::size_t k = 0;
    while (k < dims && ++idx[k] == steps[k]) idx[k++] = 0;
    if (k == dims) break;
  }
}

}  // namespace

AlphaOptimum optimize_alpha_at_eps(const SystemConfig& base, double epsilon,
                                   const GridSpec& grid, std::size_t max_iter, double tol) {
  if (!(grid.alpha_step > 0.0) || !(grid.alpha_max >= 0.0))
    throw std::invalid_argument("optimize_alpha_at_eps: empty alpha grid");

  SystemConfig cfg = base;
  cfg.epsilon = epsilon;
  cfg.access = AccessMatrix(cfg.num_user_classes(), cfg.num_slot_classes());
  validate(cfg);
  const std::size_t dims = cfg.num_user_classes() * cfg.num_slot_classes();

  BestPoint best;
  std::vector<double> lo(dims, 0.0), hi(dims, grid.alpha_max);
  double step = grid.alpha_step;
  scan_grid(cfg, lo, hi, step, max_iter, tol, best);

  // Two successive 10x local refinements around the best cell.
  for (int refine = 0; refine < 2; ++refine) {
    for (std::size_t k = 0; k < dims; ++k) {
      lo[k] = std::max(0.0, best.alpha[k] - step);
      hi[k] = best.alpha[k] + step;
    }
    step /= 10.0;
    scan_grid(cfg, lo, hi, step, max_iter, tol, best);
  }

  AlphaOptimum opt;
  apply_alpha(cfg, best.alpha);
  opt.alpha = cfg.access;
  const EvolutionResult r = evolve(cfg, max_iter, tol);
  opt.throughput = r.throughput;
  opt.resolution = r.aggregate_resolution;
  opt.per_class_resolution = r.resolution_probs;
  opt.slot_degrees.resize(cfg.num_slot_classes());
  for (std::size_t j = 0; j < cfg.num_slot_classes(); ++j)
    opt.slot_degrees[j] = expected_slot_degree(cfg, j);
  return opt;
}

OptimizationReport sweep_eps(const SystemConfig& base, double eps_lo, double eps_hi,
                             std::size_t eps_steps, const GridSpec& grid,
                             std::size_t max_iter, double tol) {
  if (!(eps_lo > -1.0)) throw std::invalid_argument("sweep_eps: eps_lo must exceed -1");
  if (eps_steps < 1) throw std::invalid_argument("sweep_eps: need at least one sample");
  if (eps_steps > 1 && !(eps_hi >= eps_lo))
    throw std::invalid_argument("sweep_eps: empty epsilon range");

  OptimizationReport report;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < eps_steps; ++i) {
    const double eps =
        eps_steps == 1
            ? eps_lo
            : eps_lo + (eps_hi - eps_lo) * static_cast<double>(i) /
                           static_cast<double>(eps_steps - 1);
    AlphaOptimum opt = optimize_alpha_at_eps(base, eps, grid, max_iter, tol);
    SweepSample sample;
    sample.epsilon = eps;
    sample.alpha = opt.alpha;
    sample.throughput = opt.throughput;
    sample.resolution = opt.resolution;
    sample.slot_degrees = opt.slot_degrees;
    report.sweep_samples.push_back(std::move(sample));
    if (report.sweep_samples[i].throughput > report.sweep_samples[best_index].throughput)
      best_index = i;
  }

  const SweepSample& best = report.sweep_samples[best_index];
  report.best_alpha = best.alpha;
  report.best_epsilon = best.epsilon;
  report.best_throughput = best.throughput;
  report.best_resolution = best.resolution;
  {
    // per-class values at the winning sample
    SystemConfig cfg = base;
    cfg.epsilon = best.epsilon;
    cfg.access = best.alpha;
    report.per_class_resolution = evolve(cfg, max_iter, tol).resolution_probs;
  }
  return report;
}

ConstrainedOptimum optimize_with_resolution_floor(const SystemConfig& base, double epsilon,
                                                  double target_resolution,
                                                  const GridSpec& grid, std::size_t max_iter,
                                                  double tol) {
  if (!(grid.alpha_step > 0.0) || !(grid.alpha_max >= 0.0))
    throw std::invalid_argument("optimize_with_resolution_floor: empty alpha grid");
  if (!(target_resolution >= 0.0) || !(target_resolution <= 1.0))
    throw std::invalid_argument("optimize_with_resolution_floor: target must lie in [0,1]");

  SystemConfig cfg = base;
  cfg.epsilon = epsilon;
  cfg.access = AccessMatrix(cfg.num_user_classes(), cfg.num_slot_classes());
  validate(cfg);
  const std::size_t J = cfg.num_slot_classes();
  const std::size_t dims = cfg.num_user_classes() * J;
  const auto n_steps = static_cast<std::size_t>(
                           std::floor(grid.alpha_max / grid.alpha_step + 0.5)) + 1;

  ConstrainedOptimum best;
  best.alpha = AccessMatrix(cfg.num_user_classes(), J);
  double best_sum = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> alpha(dims, 0.0);
  for (;;) {
    double sum = 0.0;
    for (std::size_t k = 0; k < dims; ++k) {
      alpha[k] = static_cast<double>(idx[k]) * grid.alpha_step;
      sum += alpha[k];
    }
    apply_alpha(cfg, alpha);
    const EvolutionResult r = evolve(cfg, max_iter, tol);
    if (r.aggregate_resolution >= target_resolution) {
      const bool wins = !best.feasible || r.throughput > best.throughput ||
                        (r.throughput == best.throughput && sum < best_sum);
      if (wins) {
        best.feasible = true;
        best.alpha = cfg.access;
        best.throughput = r.throughput;
        best.resolution = r.aggregate_resolution;
        best_sum = sum;
      }
    }
    std::size_t k = 0;
    while (k < dims && ++idx[k] == n_steps) idx[k++] = 0;
    if (k == dims) break;
  }
  return best;
}

}  // namespace csa

#include "csa/density_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace csa {

namespace {

// Per-config constants of the recursion, computed once.
struct Recursion {
  std::size_t L = 0;
  std::size_t J = 0;
  std::vector<double> beta;         // beta_j = sum_l alpha_lj
  std::vector<double> loss_weight;  // sum_m alpha_mj (1 - e_m) / beta_j, active j only
  std::vector<double> user_rate;    // (1+eps) b_j alpha_lj / a_l, row-major [l][j]

  explicit Recursion(const SystemConfig& c)
      : L(c.num_user_classes()),
        J(c.num_slot_classes()),
        beta(J, 0.0),
        loss_weight(J, 0.0),
        user_rate(L * J, 0.0) {
    for (std::size_t j = 0; j < J; ++j) {
      double b = 0.0, w = 0.0;
      for (std::size_t m = 0; m < L; ++m) {
        b += c.access(m, j);
        w += c.access(m, j) * (1.0 - c.user_classes[m].loss_prob);
      }
      beta[j] = b;
      loss_weight[j] = b > 0.0 ? w / b : 0.0;
    }
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t j = 0; j < J; ++j)
        user_rate[l * J + j] = (1.0 + c.epsilon) * c.slot_classes[j].fraction *
                               c.access(l, j) / c.user_classes[l].fraction;
  }

  // r_j for an active slot class. The product over classes of
  // omega_jk(1 - y_k) collapses to exp(-sum_k alpha_kj y_k).
  double slot_erasure(const SystemConfig& c, std::size_t j, std::span<const double> y) const {
    double exponent = 0.0;
    for (std::size_t k = 0; k < L; ++k) exponent += c.access(k, j) * y[k];
    const double r = 1.0 - loss_weight[j] * std::exp(-exponent);
    return std::clamp(r, 0.0, 1.0);
  }

  // One application of the map y -> prod_j lambda_lj(r_j(y)).
  void apply(const SystemConfig& c, std::span<const double> y, std::span<double> out) const {
    std::vector<double> r(J, 1.0);
    for (std::size_t j = 0; j < J; ++j)
      if (beta[j] > 0.0) r[j] = slot_erasure(c, j, y);
    for (std::size_t l = 0; l < L; ++l) {
      double v = 1.0;
      for (std::size_t j = 0; j < J; ++j) {
        if (beta[j] == 0.0) continue;  // no edges: lambda_lj is identically 1
        v *= std::exp(-user_rate[l * J + j] * (1.0 - r[j]));
      }
      out[l] = v;
    }
  }
};

}  // namespace

double slot_message(const SystemConfig& config, std::size_t j, std::span<const double> y) {
  if (j >= config.num_slot_classes())
    throw std::invalid_argument("slot_message: slot class index out of range");
  if (y.size() != config.num_user_classes())
    throw std::invalid_argument("slot_message: y size does not match the user class count");
  const Recursion rec(config);
  if (!(rec.beta[j] > 0.0))
    throw std::domain_error("slot_message: slot class " + std::to_string(j) +
                            " receives no transmissions (beta = 0)");
  return rec.slot_erasure(config, j, y);
}

EvolutionResult evolve(const SystemConfig& config, std::size_t max_iter, double tol) {
  validate(config);
  if (max_iter < 1) throw std::invalid_argument("evolve: max_iter must be at least 1");
  if (!(tol > 0.0)) throw std::invalid_argument("evolve: tol must be positive");

  const Recursion rec(config);
  const std::size_t L = rec.L;

  EvolutionResult result;
  result.trajectories.assign(L, std::vector<double>{1.0});
  std::vector<double> y(L, 1.0), next(L);

  for (std::size_t i = 1; i <= max_iter; ++i) {
    rec.apply(config, y, next);
    double diff = 0.0;
    for (std::size_t l = 0; l < L; ++l) {
      diff = std::max(diff, std::abs(next[l] - y[l]));
      result.trajectories[l].push_back(next[l]);
    }
    y = next;
    result.iterations_used = i;
    if (diff < tol) {
      result.converged = true;
      break;
    }
  }

  result.resolution_probs.resize(L);
  for (std::size_t l = 0; l < L; ++l) result.resolution_probs[l] = 1.0 - y[l];
  double aggregate = 0.0;
  for (std::size_t l = 0; l < L; ++l)
    aggregate += config.user_classes[l].fraction * result.resolution_probs[l];
  result.aggregate_resolution = aggregate;
  result.throughput = aggregate / (1.0 + config.epsilon);
  result.residual = fixed_point_residual(config, y);
  return result;
}

double throughput(const SystemConfig& config, std::span<const double> resolution_probs) {
  if (resolution_probs.size() != config.num_user_classes())
    throw std::invalid_argument("throughput: resolution_probs size mismatch");
  double aggregate = 0.0;
  for (std::size_t l = 0; l < resolution_probs.size(); ++l)
    aggregate += config.user_classes[l].fraction * resolution_probs[l];
  return aggregate / (1.0 + config.epsilon);
}

double fixed_point_residual(const SystemConfig& config, std::span<const double> y) {
  if (y.size() != config.num_user_classes())
    throw std::invalid_argument("fixed_point_residual: y size mismatch");
  const Recursion rec(config);
  std::vector<double> mapped(rec.L);
  rec.apply(config, y, mapped);
  double res = 0.0;
  for (std::size_t l = 0; l < rec.L; ++l) res = std::max(res, std::abs(y[l] - mapped[l]));
  return res;
}

}  // namespace csa

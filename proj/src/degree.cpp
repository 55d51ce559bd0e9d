#include "csa/degree.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace csa {

DegreeDistribution DegreeDistribution::exponential(double rate) {
  if (!(rate >= 0.0)) throw std::invalid_argument("degree distribution rate must be >= 0");
  DegreeDistribution d;
  d.exponential_ = true;
  d.rate_ = rate;
  return d;
}

DegreeDistribution DegreeDistribution::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial degree distribution is empty");
  double sum = 0.0;
  for (double c : coeffs) {
    if (!(c >= 0.0))
      throw std::invalid_argument("polynomial degree distribution has a negative coefficient");
    sum += c;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("polynomial degree distribution coefficients must sum to 1");
  for (double& c : coeffs) c /= sum;  // pin eval(1) to exactly 1
  DegreeDistribution d;
  d.exponential_ = false;
  d.coeffs_ = std::move(coeffs);
  return d;
}

double DegreeDistribution::eval(double x) const {
  if (exponential_) return std::exp(-rate_ * (1.0 - x));
  // Horner, highest degree first.
  double v = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

double DegreeDistribution::derivative_at_one() const {
  if (exponential_) return rate_;
  double v = 0.0;
  for (std::size_t d = 1; d < coeffs_.size(); ++d) v += static_cast<double>(d) * coeffs_[d];
  return v;
}

DegreeDistribution DegreeDistribution::node_to_edge() const {
  if (exponential_) return *this;  // the exponential form is self-conjugate
  const double mean = derivative_at_one();
  if (mean <= 0.0)
    throw std::domain_error("node_to_edge: distribution has no edges (zero mean degree)");
  std::vector<double> edge(coeffs_.size() > 1 ? coeffs_.size() - 1 : 1, 0.0);
  for (std::size_t d = 1; d < coeffs_.size(); ++d)
    edge[d - 1] = static_cast<double>(d) * coeffs_[d] / mean;
  return polynomial(std::move(edge));
}

DegreeDistribution truncated_poisson(double mean, std::size_t max_degree) {
  if (!(mean >= 0.0)) throw std::invalid_argument("truncated_poisson: mean must be >= 0");
  std::vector<double> coeffs(max_degree + 1);
  double mass = std::exp(-mean);
  for (std::size_t d = 0; d <= max_degree; ++d) {
    coeffs[d] = mass;
    mass *= mean / static_cast<double>(d + 1);
  }
  const double total = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
  for (double& c : coeffs) c /= total;
  return DegreeDistribution::polynomial(std::move(coeffs));
}

DegreeDistribution slot_degree_distribution(const SystemConfig& config, std::size_t j,
                                            std::size_t l) {
  if (l >= config.num_user_classes() || j >= config.num_slot_classes())
    throw std::invalid_argument("slot_degree_distribution: class index out of range");
  return DegreeDistribution::exponential(config.access(l, j));
}

DegreeDistribution user_degree_distribution(const SystemConfig& config, std::size_t l,
                                            std::size_t j) {
  if (l >= config.num_user_classes() || j >= config.num_slot_classes())
    throw std::invalid_argument("user_degree_distribution: class index out of range");
  const double rate = (1.0 + config.epsilon) * config.slot_classes[j].fraction *
                      config.access(l, j) / config.user_classes[l].fraction;
  return DegreeDistribution::exponential(rate);
}

double expected_slot_degree(const SystemConfig& config, std::size_t j) {
  if (j >= config.num_slot_classes())
    throw std::invalid_argument("expected_slot_degree: class index out of range");
  double beta = 0.0;
  for (std::size_t l = 0; l < config.num_user_classes(); ++l) beta += config.access(l, j);
  return beta;
}

}  // namespace csa

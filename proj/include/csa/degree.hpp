#ifndef CSA_DEGREE_HPP
#define CSA_DEGREE_HPP

#include <cstddef>
#include <vector>

#include "csa/model.hpp"

namespace csa {

/** Generating function of a node- or edge-oriented degree distribution.
 *
 *  Two representations behind one interface: the closed form
 *  exp(-rate*(1-x)) arising from Poisson degrees, and a finite polynomial
 *  sum_d c_d x^d with c_d >= 0 and sum c_d = 1. Values are immutable.
 */
class DegreeDistribution {
public:
  /** x -> exp(-rate*(1-x)), rate >= 0. */
  static DegreeDistribution exponential(double rate);

  /** x -> sum_d coeffs[d] x^d; coefficients must be non-negative and sum
   *  to 1 within 1e-9 (they are renormalized to sum exactly to 1). */
  static DegreeDistribution polynomial(std::vector<double> coeffs);

  /** Generating-function value at x in [0,1]. */
  double eval(double x) const;

  /** Mean degree, the derivative at x = 1. */
  double derivative_at_one() const;

  /** Edge-oriented counterpart x -> Lambda'(x)/Lambda'(1). The exponential
   *  form is its own edge-oriented counterpart. Throws std::domain_error for
   *  a polynomial with zero mean degree (no edges). */
  DegreeDistribution node_to_edge() const;

  bool is_exponential() const { return exponential_; }
  double rate() const { return rate_; }                          // exponential form only
  const std::vector<double>& coeffs() const { return coeffs_; }  // polynomial form only

private:
  DegreeDistribution() = default;

  bool exponential_ = true;
  double rate_ = 0.0;
  std::vector<double> coeffs_;
};

/** Polynomial with Poisson(mean) masses truncated at max_degree and
 *  renormalized. */
DegreeDistribution truncated_poisson(double mean, std::size_t max_degree = 60);

/** Degree distribution of a class-j slot with respect to class-l users:
 *  exponential with rate alpha_lj. Node- and edge-oriented forms coincide. */
DegreeDistribution slot_degree_distribution(const SystemConfig& config, std::size_t j,
                                            std::size_t l);

/** Degree distribution of a class-l user with respect to class-j slots under
 *  slot-wise random access: exponential with rate (1+eps) b_j alpha_lj / a_l.
 *  Node- and edge-oriented forms coincide. */
DegreeDistribution user_degree_distribution(const SystemConfig& config, std::size_t l,
                                            std::size_t j);

/** Expected degree of a class-j slot, beta_j = sum_l alpha_lj. */
double expected_slot_degree(const SystemConfig& config, std::size_t j);

}  // namespace csa

#endif

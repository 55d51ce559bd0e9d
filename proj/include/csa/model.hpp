#ifndef CSA_MODEL_HPP
#define CSA_MODEL_HPP

#include <cstddef>
#include <vector>

namespace csa {

/** One class of users sharing channel conditions. */
struct UserClass {
  double fraction = 0.0;   // a_l, share of the user population
  double loss_prob = 0.0;  // e_l, probability an interference-free packet is lost to noise

  bool operator==(const UserClass&) const = default;
};

/** One class of slots. */
struct SlotClass {
  double fraction = 0.0;   // b_j, share of the contention period

  bool operator==(const SlotClass&) const = default;
};

/** L x J matrix of access constants alpha_lj, stored row-major. */
class AccessMatrix {
public:
  AccessMatrix() = default;
  AccessMatrix(std::size_t user_classes, std::size_t slot_classes, double fill = 0.0)
      : rows_(user_classes), cols_(slot_classes), data_(user_classes * slot_classes, fill) {}

  double operator()(std::size_t l, std::size_t j) const { return data_[l * cols_ + j]; }
  double& operator()(std::size_t l, std::size_t j) { return data_[l * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool operator==(const AccessMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/** Complete parameter set of the access scheme: user classes with loss
 *  probabilities, slot classes, access constants and the contention-length
 *  parameter epsilon, where a period of M = (1+epsilon)N slots serves N users.
 */
struct SystemConfig {
  std::vector<UserClass> user_classes;
  std::vector<SlotClass> slot_classes;
  AccessMatrix access;
  double epsilon = 0.0;

  std::size_t num_user_classes() const { return user_classes.size(); }
  std::size_t num_slot_classes() const { return slot_classes.size(); }

  bool operator==(const SystemConfig&) const = default;
};

// Absolute tolerance on the class-fraction sums.
inline constexpr double kFractionSumTol = 1e-9;

/** Checks every structural constraint; throws std::invalid_argument naming the
 *  first violated one (with the offending class index where applicable). */
void validate(const SystemConfig& config);

/** Per-slot access probability p_lj = alpha_lj / (a_l N) for a finite
 *  population of N users. Throws std::domain_error when the result would
 *  exceed 1, i.e. the finite-N configuration is infeasible. */
double access_probability(const SystemConfig& config, std::size_t l, std::size_t j,
                          std::size_t num_users);

}  // namespace csa

#endif

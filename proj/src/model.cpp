#include "csa/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace csa {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

}  // namespace

void validate(const SystemConfig& config) {
  const std::size_t L = config.num_user_classes();
  const std::size_t J = config.num_slot_classes();
  if (L == 0) fail("no user classes defined");
  if (J == 0) fail("no slot classes defined");

  double user_sum = 0.0;
  for (std::size_t l = 0; l < L; ++l) {
    const UserClass& u = config.user_classes[l];
    if (!(u.fraction > 0.0) || u.fraction > 1.0)
      fail("user class " + std::to_string(l) + ": fraction must lie in (0,1]");
    if (!(u.loss_prob >= 0.0) || u.loss_prob > 1.0)
      fail("user class " + std::to_string(l) + ": loss probability must lie in [0,1]");
    user_sum += u.fraction;
  }
  if (std::abs(user_sum - 1.0) > kFractionSumTol) fail("user fractions sum != 1");

  double slot_sum = 0.0;
  for (std::size_t j = 0; j < J; ++j) {
    const SlotClass& s = config.slot_classes[j];
    if (!(s.fraction > 0.0) || s.fraction > 1.0)
      fail("slot class " + std::to_string(j) + ": fraction must lie in (0,1]");
    slot_sum += s.fraction;
  }
  if (std::abs(slot_sum - 1.0) > kFractionSumTol) fail("slot fractions sum != 1");

  if (config.access.rows() != L || config.access.cols() != J)
    fail("access matrix dimensions do not match the class counts");
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t j = 0; j < J; ++j)
      if (!(config.access(l, j) >= 0.0))
        fail("access constant (" + std::to_string(l) + "," + std::to_string(j) +
             ") must be non-negative");

  if (!(config.epsilon > -1.0)) fail("epsilon out of range: must exceed -1");
}

double access_probability(const SystemConfig& config, std::size_t l, std::size_t j,
                          std::size_t num_users) {
  if (l >= config.num_user_classes() || j >= config.num_slot_classes())
    throw std::invalid_argument("access_probability: class index out of range");
  if (num_users == 0) throw std::invalid_argument("access_probability: N must be positive");
  const double p =
      config.access(l, j) / (config.user_classes[l].fraction * static_cast<double>(num_users));
  if (p > 1.0)
    throw std::domain_error("access probability for class pair (" + std::to_string(l) + "," +
                            std::to_string(j) + ") exceeds 1 at N = " +
                            std::to_string(num_users));
  return p;
}

}  // namespace csa

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "csa/config_io.hpp"
#include "csa/model.hpp"
#include "test_support.hpp"

using namespace csa;

namespace {

SystemConfig two_class_config() {
  SystemConfig cfg;
  cfg.user_classes = {{0.5, 0.1}, {0.5, 0.3}};
  cfg.slot_classes = {{1.0}};
  cfg.access = AccessMatrix(2, 1, 1.5);
  cfg.epsilon = 0.05;
  return cfg;
}

}  // namespace

TEST_CASE("validate accepts a well-formed config") {
  CHECK_NOTHROW(validate(two_class_config()));
}

TEST_CASE("validate rejects user fractions that do not sum to 1") {
  SystemConfig cfg = two_class_config();
  cfg.user_classes[0].fraction = 0.6;  // 0.6 + 0.5
  CHECK_THROWS_WITH_AS(validate(cfg), "user fractions sum != 1", std::invalid_argument);
}

TEST_CASE("validate rejects epsilon at or below -1") {
  SystemConfig cfg = two_class_config();
  cfg.epsilon = -1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("epsilon out of range") != std::string::npos);
  }
}

TEST_CASE("validate names the offending class") {
  SystemConfig cfg = two_class_config();

  SUBCASE("zero fraction") {
    cfg.user_classes[1].fraction = 0.0;
    try {
      validate(cfg);
      FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("user class 1") != std::string::npos);
    }
  }
  SUBCASE("loss probability above 1") {
    cfg.user_classes[0].loss_prob = 1.5;
    try {
      validate(cfg);
      FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("user class 0") != std::string::npos);
    }
  }
  SUBCASE("negative access constant") {
    cfg.access(1, 0) = -0.1;
    try {
      validate(cfg);
      FAIL("expected a throw");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("(1,0)") != std::string::npos);
    }
  }
  SUBCASE("slot fractions must sum to 1") {
    cfg.slot_classes = {{0.5}, {0.6}};
    cfg.access = AccessMatrix(2, 2, 1.0);
    CHECK_THROWS_WITH_AS(validate(cfg), "slot fractions sum != 1", std::invalid_argument);
  }
  SUBCASE("access matrix dimensions") {
    cfg.access = AccessMatrix(1, 1, 1.0);
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  }
}

TEST_CASE("access_probability evaluates alpha/(a N)") {
  SystemConfig cfg;
  cfg.user_classes = {{1.0, 0.0}};
  cfg.slot_classes = {{1.0}};
  cfg.access = AccessMatrix(1, 1, 3.1);
  cfg.epsilon = 0.0;

  CHECK(access_probability(cfg, 0, 0, 100) == doctest::Approx(0.031).epsilon(1e-14));

  cfg.access(0, 0) = 0.0;
  CHECK(access_probability(cfg, 0, 0, 7) == 0.0);

  cfg = two_class_config();
  cfg.access(0, 0) = 3.1;
  CHECK(access_probability(cfg, 0, 0, 1000) == doctest::Approx(0.0062).epsilon(1e-14));
}

TEST_CASE("access_probability rejects infeasible finite-N configs") {
  SystemConfig cfg = two_class_config();
  cfg.access(0, 0) = 3.1;
  // p = 3.1 / (0.5 * 6) > 1
  CHECK_THROWS_AS(access_probability(cfg, 0, 0, 6), std::domain_error);
  CHECK_THROWS_AS(access_probability(cfg, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("access_probability round-trips to alpha") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> population(1000, 100000);
  for (int i = 0; i < 200; ++i) {
    const SystemConfig cfg = test::random_config(rng);
    const std::size_t N = population(rng);
    for (std::size_t l = 0; l < cfg.num_user_classes(); ++l)
      for (std::size_t j = 0; j < cfg.num_slot_classes(); ++j) {
        const double p = access_probability(cfg, l, j, N);
        const double back = p * cfg.user_classes[l].fraction * static_cast<double>(N);
        CHECK(back == doctest::Approx(cfg.access(l, j)).epsilon(1e-12));
      }
  }
}

TEST_CASE("every CLI scenario preset validates") {
  for (const auto& name : preset_names()) CHECK_NOTHROW(validate(scenario_preset(name)));
}

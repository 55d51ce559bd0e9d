#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "csa/degree.hpp"
#include "csa/model.hpp"

using namespace csa;

namespace {

// exp(-3.1) and exp(-1), frozen from a high-precision evaluation.
constexpr double kExpMinus31 = 0.045049202393557806;
constexpr double kExpMinus1 = 0.36787944117144233;

SystemConfig single_class(double alpha, double epsilon, double loss = 0.0) {
  SystemConfig cfg;
  cfg.user_classes = {{1.0, loss}};
  cfg.slot_classes = {{1.0}};
  cfg.access = AccessMatrix(1, 1, alpha);
  cfg.epsilon = epsilon;
  return cfg;
}

}  // namespace

TEST_CASE("exponential evaluation") {
  const auto flat = DegreeDistribution::exponential(0.0);
  for (double x : {0.0, 0.3, 0.7, 1.0}) CHECK(flat.eval(x) == 1.0);

  const auto d = DegreeDistribution::exponential(3.1);
  CHECK(d.eval(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.eval(0.0) == doctest::Approx(kExpMinus31).epsilon(1e-12));
}

TEST_CASE("polynomial evaluation and normalization") {
  const auto d = DegreeDistribution::polynomial({0.25, 0.5, 0.25});
  CHECK(d.eval(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.eval(0.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(d.eval(0.5) == doctest::Approx(0.25 + 0.25 + 0.0625).epsilon(1e-12));

  CHECK_THROWS_AS(DegreeDistribution::polynomial({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::polynomial({1.2, -0.2}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution::polynomial({}), std::invalid_argument);
}

TEST_CASE("derivative at one is the mean degree") {
  CHECK(DegreeDistribution::exponential(3.1).derivative_at_one() == 3.1);
  CHECK(DegreeDistribution::polynomial({0.0, 0.0, 1.0}).derivative_at_one() == 2.0);
  CHECK(DegreeDistribution::polynomial({1.0}).derivative_at_one() == 0.0);
}

TEST_CASE("node_to_edge") {
  SUBCASE("exponential form is self-conjugate") {
    for (double rate : {0.0, 0.3, 1.0, 3.1, 8.0}) {
      const auto d = DegreeDistribution::exponential(rate);
      const auto e = d.node_to_edge();
      REQUIRE(e.is_exponential());
      CHECK(e.rate() == rate);
      for (int k = 0; k <= 20; ++k) {
        const double x = k / 20.0;
        CHECK(e.eval(x) == doctest::Approx(d.eval(x)).epsilon(1e-12));
      }
    }
  }
  SUBCASE("x^2 becomes x") {
    const auto e = DegreeDistribution::polynomial({0.0, 0.0, 1.0}).node_to_edge();
    REQUIRE(e.coeffs().size() == 2);
    CHECK(e.coeffs()[0] == 0.0);
    CHECK(e.coeffs()[1] == 1.0);
  }
  SUBCASE("mixed degrees renormalize") {
    const auto e = DegreeDistribution::polynomial({0.0, 0.5, 0.5}).node_to_edge();
    REQUIRE(e.coeffs().size() == 2);
    CHECK(e.coeffs()[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(e.coeffs()[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("degree-0 node has no edges") {
    CHECK_THROWS_AS(DegreeDistribution::polynomial({1.0}).node_to_edge(), std::domain_error);
  }
}

TEST_CASE("slot degree distribution is Poisson-exponential in alpha") {
  SystemConfig cfg = single_class(0.0, 0.05);
  auto d = slot_degree_distribution(cfg, 0, 0);
  REQUIRE(d.is_exponential());
  CHECK(d.rate() == 0.0);

  cfg.access(0, 0) = 3.1;
  d = slot_degree_distribution(cfg, 0, 0);
  CHECK(d.rate() == 3.1);

  cfg.access(0, 0) = 1.0;
  // value at x = 0 is the empty-slot probability
  CHECK(slot_degree_distribution(cfg, 0, 0).eval(0.0) ==
        doctest::Approx(kExpMinus1).epsilon(1e-12));
}

TEST_CASE("user degree distribution rate (1+eps) b alpha / a") {
  CHECK(user_degree_distribution(single_class(3.1, 0.0), 0, 0).rate() == 3.1);
  CHECK(user_degree_distribution(single_class(3.1, 0.7), 0, 0).rate() ==
        doctest::Approx(5.27).epsilon(1e-14));
  CHECK(user_degree_distribution(single_class(0.0, 0.7), 0, 0).rate() == 0.0);

  SystemConfig cfg;
  cfg.user_classes = {{0.25, 0.0}, {0.75, 0.0}};
  cfg.slot_classes = {{0.4}, {0.6}};
  cfg.access = AccessMatrix(2, 2, 2.0);
  cfg.epsilon = 0.5;
  CHECK(user_degree_distribution(cfg, 0, 1).rate() ==
        doctest::Approx(1.5 * 0.6 * 2.0 / 0.25).epsilon(1e-14));
}

TEST_CASE("expected slot degree sums the access column") {
  CHECK(expected_slot_degree(single_class(3.1, 0.0), 0) == 3.1);

  SystemConfig cfg;
  cfg.user_classes = {{0.5, 0.25}, {0.5, 0.5}};
  cfg.slot_classes = {{1.0}};
  cfg.access = AccessMatrix(2, 1);
  cfg.access(0, 0) = 3.1;
  cfg.access(1, 0) = 0.0;
  cfg.epsilon = -0.3;
  CHECK(expected_slot_degree(cfg, 0) == 3.1);

  cfg.access(0, 0) = 0.0;
  CHECK(expected_slot_degree(cfg, 0) == 0.0);
}

TEST_CASE("generating functions stay in [0,1] and are monotone") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<DegreeDistribution> dists;
  for (double rate : {0.0, 0.5, 3.1, 10.0}) dists.push_back(DegreeDistribution::exponential(rate));
  dists.push_back(truncated_poisson(4.0));
  for (int i = 0; i < 10; ++i) {
    std::vector<double> coeffs(1 + static_cast<std::size_t>(unit(rng) * 8));
    double sum = 0.0;
    for (double& c : coeffs) {
      c = unit(rng);
      sum += c;
    }
    for (double& c : coeffs) c /= sum;
    dists.push_back(DegreeDistribution::polynomial(coeffs));
  }

  for (const auto& d : dists) {
    double prev = d.eval(0.0);
    for (int k = 0; k <= 100; ++k) {
      const double v = d.eval(k / 100.0);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("polynomial edge form matches the finite-difference derivative") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> coeffs(2 + static_cast<std::size_t>(unit(rng) * 7));
    double sum = 0.0;
    for (double& c : coeffs) {
      c = unit(rng);
      sum += c;
    }
    for (double& c : coeffs) c /= sum;
    const auto p = DegreeDistribution::polynomial(coeffs);
    if (p.derivative_at_one() <= 0.0) continue;
    const auto edge = p.node_to_edge();

    const double h = 1e-6;
    for (double x : {0.1, 0.35, 0.6, 0.9}) {
      const double fd = (p.eval(x + h) - p.eval(x - h)) / (2.0 * h);
      CHECK(edge.eval(x) * p.derivative_at_one() == doctest::Approx(fd).epsilon(1e-9));
    }
  }
}

TEST_CASE("truncated Poisson polynomial matches the closed form") {
  for (double alpha : {0.5, 1.0, 3.1, 7.0, 10.0}) {
    const auto poly = truncated_poisson(alpha, 60);
    const auto closed = DegreeDistribution::exponential(alpha);
    for (int k = 0; k <= 50; ++k) {
      const double x = k / 50.0;
      CHECK(poly.eval(x) == doctest::Approx(closed.eval(x)).epsilon(1e-9));
    }
  }
}

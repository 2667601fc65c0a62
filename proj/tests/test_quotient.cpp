#include <doctest.h>

#include "arrowlab/quotient.hpp"
#include "oracles.hpp"

using namespace arrowlab;

namespace {

// Points a, b, b', c with b ~ b'.
MetricFixture four_point_chain() {
  const std::vector<Rational> upper{3, 8, 10, 6, 7, 4};
  return {FiniteMetricSpace::from_upper_triangle(4, upper), EquivalencePartition({0, 1, 1, 2}), {}};
}

}  // namespace

TEST_CASE("chain distance on the four-point fixture") {
  const auto fx = four_point_chain();
  CHECK(check_metric_axioms(fx.space).ok);
  CHECK(oracle::chain_distance(fx.space, fx.partition, 0, 3, 4) == Rational(7));
  CHECK(quotient_distance_chain(fx.space, fx.partition, 0, 3) == Rational(7));
  CHECK(quotient_distance_chain(fx.space, fx.partition, 1, 2) == Rational(0));
  CHECK(quotient_distance_orbit(fx.space, fx.partition, 0, 3) == Rational(10));
}

TEST_CASE("metric axiom checker reports the first violation") {
  using R = Rational;
  CHECK(check_metric_axioms(FiniteMetricSpace({{R(0), R(1)}, {R(2), R(0)}})).violated == Axiom::symmetry);
  CHECK(check_metric_axioms(FiniteMetricSpace({{R(1), R(1)}, {R(1), R(0)}})).violated ==
        Axiom::zero_self_distance);
  CHECK(check_metric_axioms(FiniteMetricSpace({{R(0), R(-1)}, {R(-1), R(0)}})).violated == Axiom::nonnegativity);
  const FiniteMetricSpace zero({{R(0), R(0)}, {R(0), R(0)}});
  CHECK(check_metric_axioms(zero).violated == Axiom::indiscernibles);
  CHECK(check_metric_axioms(zero, true).ok);
  const std::vector<Rational> bad{1, 5, 1};
  const auto r = check_metric_axioms(FiniteMetricSpace::from_upper_triangle(3, bad));
  CHECK(r.violated == Axiom::triangle);
  CHECK(axiom_name(Axiom::triangle) == "triangle_inequality");
}

TEST_CASE("rule distance: Dict_0 vs Dict_1 under uniform") {
  const auto u = uniform_distribution(2, 3);
  const auto d0 = dictator(2, 3, 0);
  const auto d1 = dictator(2, 3, 1);
  CHECK(rule_distance(u, d0, d1) == Rational(5, 6));
  CHECK(oracle::disagreement(u, oracle::as_function(d0), oracle::as_function(d1)) == Rational(5, 6));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto f = random_pareto_rule(2, 3, s);
    CHECK(rule_distance(u, f, d0) == oracle::disagreement(u, oracle::as_function(f), oracle::as_function(d0)));
  }
}

TEST_CASE("rule spaces are metrics and thread count does not matter") {
  const auto u = uniform_distribution(2, 3);
  std::vector<VotingRule> rules;
  for (std::uint64_t s = 0; s < 12; ++s) rules.push_back(random_pareto_rule(2, 3, s));
  const auto one = rule_space(u, rules, 1);
  const auto many = rule_space(u, rules, 8);
  CHECK(one.upper_triangle() == many.upper_triangle());
  CHECK(check_metric_axioms(one).ok);
}

TEST_CASE("random orbit fixtures: chain equals orbit and matches brute force") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto fx = random_orbit_fixture(seed);
    REQUIRE(fx.space.size() <= 12);
    CHECK(verify_isometry_orbits(fx.space, fx.partition, fx.generators));
    CHECK(check_metric_axioms(fx.space).ok);
    const auto chain = quotient_chain_matrix(fx.space, fx.partition);
    for (std::size_t x = 0; x < fx.space.size(); ++x) {
      for (std::size_t y = 0; y < fx.space.size(); ++y) {
        CHECK(chain[x][y] == quotient_distance_orbit(fx.space, fx.partition, x, y));
      }
    }
    if (fx.space.size() <= 8) {
      CHECK(chain[0][fx.space.size() - 1] ==
            oracle::chain_distance(fx.space, fx.partition, 0, fx.space.size() - 1, 3));
    }
  }
}

TEST_CASE("isometry diagnostic rejects non-orbit partitions") {
  const auto fx = four_point_chain();
  const std::vector<std::vector<std::size_t>> swap_b{{0, 2, 1, 3}};
  CHECK_FALSE(verify_isometry_orbits(fx.space, fx.partition, swap_b));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto good = random_orbit_fixture(seed);
    if (good.partition.classes().size() == good.space.size()) continue;
    CHECK_FALSE(verify_isometry_orbits(good.space, EquivalencePartition::singletons(good.space.size()),
                                       good.generators));
  }
}

#include <doctest.h>

#include "arrowlab/dynamics.hpp"
#include "oracles.hpp"

using namespace arrowlab;

namespace {

// Dict_0 except on the non-unanimous profile (order 0, order 1), where it
// follows voter 1.
VotingRule near_dictator() {
  const auto d = dictator(2, 3, 0);
  std::vector<std::uint16_t> t(d.table().begin(), d.table().end());
  t[ProfileSpace(2, 3).index(std::vector<int>{0, 1})] = 1;
  return VotingRule(2, 3, std::move(t));
}

Distribution lifted_star() { return lift_distribution(star_distribution(2, 3, Rational(1, 2), 0), 2); }

}  // namespace

TEST_CASE("forces of the near-dictator") {
  const auto u = uniform_distribution(2, 3);
  const auto f = near_dictator();
  const auto fp = force_profile(u, f);
  CHECK(fp.forces == std::vector<Rational>{Rational(35, 36), Rational(7, 36)});
  CHECK(fp.most_forceful == std::vector<int>{0});
  CHECK(fp.least_forceful == std::vector<int>{1});
  for (int i = 0; i < 2; ++i) CHECK(force(u, f, i) == oracle::force(u, oracle::as_function(f), i));
}

TEST_CASE("phi sends the near-dictator to Dict_0 and fixes dictators") {
  const auto u = uniform_distribution(2, 3);
  CHECK(phi(u, near_dictator()) == dictator(2, 3, 0));
  for (int i = 0; i < 3; ++i) CHECK(phi(uniform_distribution(3, 3), dictator(3, 3, i)) == dictator(3, 3, i));
  CHECK_THROWS(phi(point_mass(2, 3, 0), near_dictator()));

  const auto trace = iterate_phi(u, near_dictator(), 10);
  CHECK(trace.terminated_by == Termination::fixpoint);
  CHECK(trace.fixpoint_step() == 1);
  CHECK(trace.fixpoint_is_dictatorship);
  CHECK(trace.steps.back().rule == dictator(2, 3, 0));

  const auto limited = iterate_phi(u, near_dictator(), 0);
  CHECK(limited.terminated_by == Termination::step_limit);
  CHECK(limited.steps.size() == 1);
}

TEST_CASE("phi agrees with its definition on random rules") {
  const auto u3 = uniform_distribution(3, 3);
  const auto ls = lifted_star();
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto f = random_pareto_rule(3, 3, s);
    CHECK(phi(u3, f) == oracle::tabulate(oracle::phi_by_definition(u3, f), 3, 3));
    CHECK(phi(ls, f) == oracle::tabulate(oracle::phi_by_definition(ls, f), 3, 3));
  }
}

TEST_CASE("all-tied forces collapse onto the lowest voter") {
  const auto u = uniform_distribution(2, 3);
  const auto g = majority_with_canonical_tiebreak(2, 3);
  const auto fp = force_profile(u, g);
  REQUIRE(fp.forces[0] == fp.forces[1]);
  CHECK(phi(u, g) == compose_collapse(g, 0));
  CHECK(phi(u, g, {TieBreak::max_index, 0}) == compose_collapse(g, 1));
  const int seeded = select_leader(fp, {TieBreak::seeded, 42});
  CHECK(seeded == select_leader(fp, {TieBreak::seeded, 42}));
  CHECK(phi(u, g, {TieBreak::seeded, 42}) == compose_collapse(g, seeded));
}

TEST_CASE("relabeling voters permutes forces and preserves distances") {
  for (const auto& mu : {uniform_distribution(3, 3), lifted_star()}) {
    const auto f = random_pareto_rule(3, 3, 7);
    const auto g = random_pareto_rule(3, 3, 8);
    for (const auto& pi : VoterPermutation::all(3)) {
      const auto fp = compose_voter_permutation(f, pi);
      for (int i = 0; i < 3; ++i) CHECK(force(mu, fp, pi(i)) == force(mu, f, i));
      CHECK(oracle::disagreement(mu, oracle::as_function(fp), oracle::as_function(compose_voter_permutation(g, pi))) ==
            oracle::disagreement(mu, oracle::as_function(f), oracle::as_function(g)));
    }
  }
}

TEST_CASE("equivalence classes") {
  const auto u = uniform_distribution(3, 3);
  CHECK(orbit_class(u, dictator(3, 3, 1)) == dictator_class(3, 3));
  CHECK(dictator_class(3, 3).size() == 3);
  CHECK(equivalent(u, dictator(3, 3, 0), dictator(3, 3, 2)));

  const auto g = majority_with_canonical_tiebreak(3, 3);
  CHECK(orbit_class(u, g).size() == 1);

  const auto f = random_pareto_rule(3, 3, 4);
  for (int i = 0; i < 3; ++i) {
    const auto fs = compose_collapse(f, i);
    const auto fp = force_profile(u, fs);
    CHECK(fp.most_forceful == std::vector<int>{i});
    const auto c = orbit_class(u, fs);
    CHECK(c == OrbitClass({compose_collapse(f, 0), compose_collapse(f, 1), compose_collapse(f, 2)}));
    CHECK(phi_quotient_is_well_defined(u, c));
  }

  const auto u2 = uniform_distribution(2, 3);
  CHECK(phi_quotient(u2, orbit_class(u2, near_dictator())) == dictator_class(2, 3));
  CHECK(phi_quotient(u, dictator_class(3, 3)) == dictator_class(3, 3));
}

TEST_CASE("collapse report is consistent with its definition") {
  const auto u = uniform_distribution(2, 3);
  std::vector<VotingRule> rules;
  for (std::uint64_t s = 0; s < 10; ++s) rules.push_back(random_pareto_rule(2, 3, s));
  const auto report = check_collapse_conjecture(u, rules, 4);
  CHECK(report.passed + report.failed == rules.size());
  for (const auto& o : report.outcomes) {
    VotingRule it = o.rule;
    for (int k = 0; k < 2; ++k) it = phi(u, it);
    CHECK(it == o.iterate);
    if (o.collapsed) CHECK(o.iterate == compose_collapse(o.rule, o.collapse_voter));
  }
}

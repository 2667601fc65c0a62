#include <doctest.h>

#include "arrowlab/io.hpp"

using namespace arrowlab;

TEST_CASE("rule files round trip") {
  const auto f = random_pareto_rule(2, 3, 9);
  const auto j = rule_to_json(f);
  CHECK(j.at("format_version") == kFormatVersion);
  CHECK(rule_from_json(j) == f);
  CHECK(rule_from_json(Json::parse(j.dump())) == f);

  auto bad = j;
  bad["table"][0] = 9;
  CHECK_THROWS_AS(rule_from_json(bad), FormatError);
  bad = j;
  bad.erase("format_version");
  CHECK_THROWS_AS(rule_from_json(bad), FormatError);
  bad = j;
  bad["kind"] = "distribution";
  CHECK_THROWS_AS(rule_from_json(bad), FormatError);
  bad = j;
  bad["n"] = 7;
  CHECK_THROWS(rule_from_json(bad));
}

TEST_CASE("distribution files use exact rational strings") {
  const auto s = star_distribution(2, 3, Rational(1, 2), 0);
  const auto j = distribution_to_json(s);
  CHECK(j.at("weights")[0] == "1/2");
  CHECK(j.at("weights")[1] == "1/70");
  const auto back = distribution_from_json(j);
  CHECK(std::equal(back.weights().begin(), back.weights().end(), s.weights().begin()));

  auto bad = j;
  bad["weights"][0] = 0.5;
  CHECK_THROWS_AS(distribution_from_json(bad), FormatError);
  bad = j;
  bad["weights"][0] = "1/3";
  CHECK_THROWS_AS(distribution_from_json(bad), FormatError);
}

TEST_CASE("fixture files round trip") {
  const auto fx = random_orbit_fixture(5);
  const auto back = fixture_from_json(fixture_to_json(fx));
  CHECK(back.space.upper_triangle() == fx.space.upper_triangle());
  CHECK(back.partition.classes() == fx.partition.classes());
  CHECK(back.generators == fx.generators);
  auto bad = fixture_to_json(fx);
  bad["classes"].erase(0);
  CHECK_THROWS_AS(fixture_from_json(bad), FormatError);
}

TEST_CASE("digest string format") {
  const auto d = digest_string(dictator(2, 3, 0));
  CHECK(d.rfind("fnv1a64:", 0) == 0);
  CHECK(d.size() == 8 + 16);
}

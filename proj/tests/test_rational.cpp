#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "arrowlab/parallel.hpp"
#include "arrowlab/random.hpp"
#include "arrowlab/rational.hpp"

using namespace arrowlab;

TEST_CASE("rationals are exact and print in lowest terms") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(3).str() == "3/1");
  CHECK(Rational(-6, -8).str() == "3/4");
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("0.5"));
  CHECK_THROWS(Rational::parse(""));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational(1) / Rational(0));
  std::ostringstream os;
  os << Rational(5, 6);
  CHECK(os.str() == "5/6");
}

TEST_CASE("uniform_index stays in range and reaches every value") {
  std::mt19937_64 rng(3);
  std::set<std::size_t> seen;
  for (int k = 0; k < 2000; ++k) {
    const auto v = uniform_index(rng, 7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
}

TEST_CASE("parallel_for fills every slot and rethrows") {
  for (int jobs : {1, 3, 8}) {
    std::vector<int> out(100, -1);
    parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  }
  CHECK_THROWS(parallel_for(10, 4, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }));
}

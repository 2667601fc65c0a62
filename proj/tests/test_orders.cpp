#include <doctest.h>

#include <algorithm>
#include <set>

#include "arrowlab/orders.hpp"
#include "oracles.hpp"

using namespace arrowlab;

TEST_CASE("orders are enumerated lexicographically with consistent indices") {
  for (int m = 1; m <= 5; ++m) {
    const auto orders = enumerate_orders(m);
    REQUIRE(orders.size() == factorial(m));
    CHECK(std::is_sorted(orders.begin(), orders.end()));
    for (std::size_t k = 0; k < orders.size(); ++k) {
      CHECK(order_index(orders[k]) == k);
      CHECK(order_from_index(k, m) == orders[k]);
    }
  }
  CHECK(enumerate_orders(3).front() == LinearOrder({0, 1, 2}));
  CHECK(enumerate_orders(3).back() == LinearOrder({2, 1, 0}));
}

TEST_CASE("linear orders reject non-permutations") {
  CHECK_THROWS(LinearOrder({0, 0, 1}));
  CHECK_THROWS(LinearOrder({0, 3, 1}));
  const LinearOrder l({2, 0, 1});
  CHECK(prefers(l, 2, 0));
  CHECK(prefers(l, 0, 1));
  CHECK_FALSE(prefers(l, 1, 2));
  CHECK_THROWS(prefers(l, 1, 1));
  CHECK_THROWS(prefers(l, 0, 3));
}

TEST_CASE("scale bounds") {
  CHECK_NOTHROW(check_scale(4, 4));
  CHECK_THROWS_AS(check_scale(5, 3), ScaleError);
  CHECK_THROWS_AS(check_scale(2, 5), ScaleError);
  CHECK_THROWS_AS(check_scale(0, 3), ScaleError);
  CHECK_THROWS_AS(ProfileSpace(5, 2), ScaleError);
}

TEST_CASE("tournament lookup inverts pair bits and detects cycles") {
  for (int m = 2; m <= 5; ++m) {
    const auto& catalog = OrderCatalog::of(m);
    std::set<std::uint32_t> seen;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      CHECK(catalog.order_for_tournament(catalog.pair_bits(k)) == static_cast<int>(k));
      seen.insert(catalog.pair_bits(k));
    }
    CHECK(seen.size() == catalog.size());
  }
  // 0 > 1, 1 > 2, 2 > 0
  const int p01 = pair_index(0, 1, 3);
  const int p12 = pair_index(1, 2, 3);
  const std::uint32_t cycle = (1u << p01) | (1u << p12);
  CHECK(OrderCatalog::of(3).order_for_tournament(cycle) == -1);
}

TEST_CASE("profile index round trip, voter 0 most significant") {
  const ProfileSpace space(3, 3);
  CHECK(space.size() == 216);
  const auto all = oracle::all_profiles(3, 3);
  for (std::size_t k = 0; k < space.size(); ++k) {
    CHECK(profile_index(all[k], 3) == k);
    CHECK(profile_from_index(k, 3, 3) == all[k]);
    for (int i = 0; i < 3; ++i) CHECK(space.digit(k, i) == static_cast<int>(order_index(all[k].ballot(i))));
  }
  CHECK(space.unanimous(4) == profile_index(Profile(std::vector<LinearOrder>(3, order_from_index(4, 3))), 3));
}

TEST_CASE("voter permutations compose as function composition") {
  const auto perms = VoterPermutation::all(3);
  REQUIRE(perms.size() == 6);
  CHECK(perms.front() == VoterPermutation::identity(3));
  const Profile p({order_from_index(0, 3), order_from_index(3, 3), order_from_index(5, 3)});
  for (const auto& a : perms) {
    CHECK(compose(a, a.inverse()) == VoterPermutation::identity(3));
    for (int i = 0; i < 3; ++i) CHECK(apply_voter_permutation(p, a).ballot(i) == p.ballot(a(i)));
    for (const auto& b : perms) {
      CHECK(apply_voter_permutation(apply_voter_permutation(p, a), b) == apply_voter_permutation(p, compose(a, b)));
    }
  }
  CHECK_THROWS(VoterPermutation({0, 0, 1}));
}

TEST_CASE("structural maps on profiles") {
  const Profile p({order_from_index(1, 3), order_from_index(2, 3), order_from_index(4, 3)});
  const Profile s = collapse_to_voter(p, 1);
  for (int i = 0; i < 3; ++i) CHECK(s.ballot(i) == p.ballot(1));
  const Profile rest = drop_voter(p, 1);
  REQUIRE(rest.voters() == 2);
  CHECK(rest.ballot(0) == p.ballot(0));
  CHECK(rest.ballot(1) == p.ballot(2));
  CHECK(reassemble(rest, p.ballot(1), 1) == p);
  CHECK_THROWS(drop_voter(Profile({order_from_index(0, 3)}), 0));
}

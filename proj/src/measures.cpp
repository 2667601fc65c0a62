#include "arrowlab/measures.hpp"

#include <stdexcept>
#include <string>

namespace arrowlab {

Distribution::Distribution(int voters, int candidates, std::vector<Rational> weights)
    : n_(voters), m_(candidates), weights_(std::move(weights)) {
  check_scale(voters, candidates);
  const std::size_t expected = int_pow(factorial(candidates), voters);
  if (weights_.size() != expected) {
    throw std::invalid_argument("distribution has " + std::to_string(weights_.size()) + " weights, expected " +
                                std::to_string(expected));
  }
  Rational total;
  for (const auto& w : weights_) {
    if (w.sign() < 0) throw std::invalid_argument("distribution weight is negative");
    total += w;
  }
  if (total != Rational(1)) throw std::invalid_argument("distribution weights sum to " + total.str() + ", not 1");
}

Distribution uniform_distribution(int voters, int candidates) {
  const ProfileSpace space(voters, candidates);
  const Rational w(1, static_cast<long>(space.size()));
  return Distribution(voters, candidates, std::vector<Rational>(space.size(), w));
}

Distribution point_mass(int voters, int candidates, std::size_t profile) {
  const ProfileSpace space(voters, candidates);
  if (profile >= space.size()) throw std::out_of_range("profile index out of range");
  std::vector<Rational> weights(space.size());
  weights[profile] = Rational(1);
  return Distribution(voters, candidates, std::move(weights));
}

bool admissible_epsilon(const Rational& epsilon, int candidates) {
  const Rational bound = Rational(1) - Rational(2, static_cast<long>(factorial(candidates)));
  return epsilon.sign() > 0 && epsilon < bound;
}

Distribution star_distribution(int voters, int candidates, const Rational& epsilon, int y_order) {
  if (candidates < 3) throw std::invalid_argument("star distribution needs at least three candidates");
  if (!admissible_epsilon(epsilon, candidates)) {
    throw std::invalid_argument("epsilon " + epsilon.str() + " is outside (0, 1 - 2/m!)");
  }
  const ProfileSpace space(voters, candidates);
  if (y_order < 0 || static_cast<std::size_t>(y_order) >= space.base()) {
    throw std::out_of_range("y order index out of range");
  }
  const Rational rest = epsilon / Rational(static_cast<long>(space.size() - 1));
  std::vector<Rational> weights(space.size(), rest);
  weights[space.unanimous(y_order)] = Rational(1) - epsilon;
  return Distribution(voters, candidates, std::move(weights));
}

Distribution lift_distribution(const Distribution& mu, int voter) {
  const int n = mu.voters() + 1;
  const int m = mu.candidates();
  if (voter < 0 || voter >= n) throw std::out_of_range("lift voter out of range");
  const ProfileSpace outer(n, m);
  const ProfileSpace inner(n - 1, m);
  const auto perms = VoterPermutation::all(n);
  const Rational scale(static_cast<long>(factorial(n) * outer.base()));
  std::vector<Rational> weights(outer.size());
  std::vector<int> digits(n);
  std::vector<int> permuted(n);
  std::vector<int> rest(n - 1);
  for (std::size_t k = 0; k < outer.size(); ++k) {
    outer.digits(k, digits);
    Rational sum;
    for (const auto& tau : perms) {
      for (int j = 0; j < n; ++j) permuted[j] = digits[tau(j)];
      for (int j = 0, r = 0; j < n; ++j) {
        if (j != voter) rest[r++] = permuted[j];
      }
      sum += mu.weight(inner.index(rest));
    }
    weights[k] = sum / scale;
  }
  return Distribution(n, m, std::move(weights));
}

bool is_permutation_invariant(const Distribution& mu) {
  const int n = mu.voters();
  const ProfileSpace space(n, mu.candidates());
  // Transpositions of adjacent voters generate the symmetric group.
  std::vector<int> digits(n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    for (int i = 0; i + 1 < n; ++i) {
      std::swap(digits[i], digits[i + 1]);
      const bool same = mu.weight(space.index(digits)) == mu.weight(k);
      std::swap(digits[i], digits[i + 1]);
      if (!same) return false;
    }
  }
  return true;
}

bool has_full_support(const Distribution& mu) {
  for (const auto& w : mu.weights()) {
    if (w.sign() <= 0) return false;
  }
  return true;
}

Rational total_mass(const Distribution& mu) {
  Rational total;
  for (const auto& w : mu.weights()) total += w;
  return total;
}

}  // namespace arrowlab

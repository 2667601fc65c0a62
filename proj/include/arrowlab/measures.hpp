#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arrowlab/orders.hpp"
#include "arrowlab/rational.hpp"

namespace arrowlab {

/// Exact probability weights over L(A)^n, indexed by profile index.
/// Construction rejects negative weights and any total other than 1.
class Distribution {
 public:
  Distribution(int voters, int candidates, std::vector<Rational> weights);

  int voters() const { return n_; }
  int candidates() const { return m_; }
  std::size_t size() const { return weights_.size(); }
  const Rational& weight(std::size_t profile) const { return weights_[profile]; }
  std::span<const Rational> weights() const { return weights_; }

  bool operator==(const Distribution&) const = default;

 private:
  int n_;
  int m_;
  std::vector<Rational> weights_;
};

Distribution uniform_distribution(int voters, int candidates);

/// Weight 1 on a single profile.
Distribution point_mass(int voters, int candidates, std::size_t profile);

/// Weight 1 - epsilon on (y, ..., y) and epsilon spread evenly over every
/// other profile of `voters` ballots. Requires m >= 3 and
/// 0 < epsilon < 1 - 2/m!.
Distribution star_distribution(int voters, int candidates, const Rational& epsilon, int y_order);

/// True iff epsilon lies in the open interval (0, 1 - 2/m!).
bool admissible_epsilon(const Rational& epsilon, int candidates);

/// Lifts a distribution over n-1 voters to n voters:
///   lifted(x) = sum over all n! voter permutations tau of mu(drop_voter(tau(x), i))
///               divided by n! * m!.
/// The sum is evaluated literally, one term per permutation.
Distribution lift_distribution(const Distribution& mu, int voter);

bool is_permutation_invariant(const Distribution& mu);
bool has_full_support(const Distribution& mu);

/// Sum of all weights; always 1 for a constructed Distribution but exposed
/// so that callers can assert it on derived objects.
Rational total_mass(const Distribution& mu);

}  // namespace arrowlab

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arrowlab/measures.hpp"
#include "arrowlab/rational.hpp"
#include "arrowlab/rules.hpp"

namespace arrowlab {

/// A finite set of points {0, ..., size-1} with a full distance matrix.
/// The matrix is not required to be a metric; check_metric_axioms decides.
class FiniteMetricSpace {
 public:
  explicit FiniteMetricSpace(std::vector<std::vector<Rational>> matrix);
  /// Symmetric space from the strict upper triangle, row-major:
  /// d(0,1), d(0,2), ..., d(0,n-1), d(1,2), ...
  static FiniteMetricSpace from_upper_triangle(std::size_t points, std::span<const Rational> upper);

  std::size_t size() const { return dist_.size(); }
  const Rational& dist(std::size_t x, std::size_t y) const { return dist_[x][y]; }
  std::vector<Rational> upper_triangle() const;

 private:
  std::vector<std::vector<Rational>> dist_;
};

/// Partition of the points of a space into classes, one id per point.
class EquivalencePartition {
 public:
  explicit EquivalencePartition(std::vector<int> class_of);
  static EquivalencePartition singletons(std::size_t points);

  std::size_t size() const { return class_of_.size(); }
  int class_of(std::size_t point) const { return class_of_[point]; }
  std::span<const int> ids() const { return class_of_; }
  bool equivalent(std::size_t x, std::size_t y) const { return class_of_[x] == class_of_[y]; }
  /// Members of every class, classes ordered by smallest member.
  std::vector<std::vector<std::size_t>> classes() const;

 private:
  std::vector<int> class_of_;
};

/// A synthetic space plus a partition. `generators` are point
/// permutations generating the group whose orbits the classes are meant to
/// be; optional in files, required by the isometry diagnostic.
struct MetricFixture {
  FiniteMetricSpace space;
  EquivalencePartition partition;
  std::vector<std::vector<std::size_t>> generators;
};

/// Random fixture with at most `max_points` points: a union of orbits of
/// integer vectors under a group of signed coordinate permutations, with an
/// L1 or L-infinity distance scaled by a random rational. The generators are
/// isometries and the classes are their orbits by construction.
MetricFixture random_orbit_fixture(std::uint64_t seed, std::size_t max_points = 12);

/// Probability under mu that f and g disagree.
Rational rule_distance(const Distribution& mu, const VotingRule& f, const VotingRule& g);

/// The space of `rules` under rule_distance; pairwise distances are computed
/// on up to `jobs` threads.
FiniteMetricSpace rule_space(const Distribution& mu, std::span<const VotingRule> rules, int jobs = 1);

/// Infimum over chains x = p0, q0 ~ p1, q1 ~ p2, ..., qk = y of the summed
/// d(p_j, q_j). Finite spaces attain it; computed as all-pairs shortest
/// paths where equivalent points are joined by zero-cost edges.
std::vector<std::vector<Rational>> quotient_chain_matrix(const FiniteMetricSpace& space,
                                                         const EquivalencePartition& partition);
Rational quotient_distance_chain(const FiniteMetricSpace& space, const EquivalencePartition& partition,
                                 std::size_t x, std::size_t y);

/// min over x' ~ x, y' ~ y of d(x', y'). Equals the chain distance whenever
/// the classes are orbits of a group of isometries; that precondition is not
/// checked here (see verify_isometry_orbits).
Rational quotient_distance_orbit(const FiniteMetricSpace& space, const EquivalencePartition& partition,
                                 std::size_t x, std::size_t y);

/// Brute-force diagnostic: every generator is a distance-preserving
/// bijection of the points and the orbits of the group they generate are
/// exactly the classes of `partition`.
bool verify_isometry_orbits(const FiniteMetricSpace& space, const EquivalencePartition& partition,
                            std::span<const std::vector<std::size_t>> generators);

enum class Axiom { none, nonnegativity, zero_self_distance, indiscernibles, symmetry, triangle };

std::string axiom_name(Axiom axiom);

struct MetricReport {
  bool ok = true;
  Axiom violated = Axiom::none;
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t z = 0;  // only meaningful for triangle violations
};

/// Exhaustive check of the metric axioms, stopping at the first violation.
/// With `pseudometric` set, distinct points at distance zero are allowed.
MetricReport check_metric_axioms(const FiniteMetricSpace& space, bool pseudometric = false);

}  // namespace arrowlab

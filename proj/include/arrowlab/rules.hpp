#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arrowlab/orders.hpp"

namespace arrowlab {

/// A voting rule L(A)^n -> L(A) stored as a dense table: entry k is the
/// canonical index of the output order on the profile with index k.
class VotingRule {
 public:
  VotingRule(int voters, int candidates, std::vector<std::uint16_t> table);

  int voters() const { return n_; }
  int candidates() const { return m_; }
  std::size_t size() const { return table_.size(); }
  std::span<const std::uint16_t> table() const { return table_; }
  int at(std::size_t profile) const { return table_[profile]; }

  bool operator==(const VotingRule&) const = default;
  /// Lexicographic on (n, m, table); used for canonical ordering of classes.
  std::strong_ordering operator<=>(const VotingRule& other) const;

 private:
  int n_;
  int m_;
  std::vector<std::uint16_t> table_;
};

/// Throws std::invalid_argument when the two rules live on different spaces.
void require_same_shape(const VotingRule& f, const VotingRule& g);

LinearOrder evaluate(const VotingRule& f, const Profile& profile);

VotingRule dictator(int voters, int candidates, int voter);
VotingRule constant_rule(int voters, int candidates, int order);

bool is_pareto(const VotingRule& f);
bool is_iia(const VotingRule& f);
std::optional<int> is_dictatorship(const VotingRule& f);

/// (f o pi)(x) = f(pi(x)).
VotingRule compose_voter_permutation(const VotingRule& f, const VoterPermutation& pi);
/// (f o s_i)(x) = f(x_i, ..., x_i).
VotingRule compose_collapse(const VotingRule& f, int voter);
/// n-voter rule that applies g to the first n-1 ballots and ignores the last.
VotingRule cylinder_extend(const VotingRule& g);

/// Orders consistent with every pairwise comparison on which all ballots of
/// `digits` agree, in lexicographic order of rankings.
std::vector<int> pareto_consistent_orders(std::span<const int> digits, int candidates);

/// On every profile, an output drawn uniformly among the Pareto-consistent
/// orders. Deterministic in `seed`.
VotingRule random_pareto_rule(int voters, int candidates, std::uint64_t seed);

/// Ranks candidates by pairwise-majority (Copeland) score, ties in the
/// pairwise contest counting half, remaining score ties broken by smaller
/// candidate index. Anonymous and Pareto; not IIA for m >= 3.
VotingRule majority_with_canonical_tiebreak(int voters, int candidates);

/// Borda count with smaller candidate index winning score ties.
VotingRule borda_rule(int voters, int candidates);

/// FNV-1a 64 over the table entries, each written as a little-endian uint16.
std::uint64_t table_digest(const VotingRule& f);

}  // namespace arrowlab

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "arrowlab/dynamics.hpp"
#include "arrowlab/measures.hpp"
#include "arrowlab/rules.hpp"

namespace arrowlab {

/// One Boolean function per unordered candidate pair (a < b). Input bit i of
/// a pattern is set iff voter i ranks a above b; the output bit says whether
/// society does. Unanimous patterns are pinned: all-ones -> 1, all-zeros -> 0.
class PairwiseAggregator {
 public:
  PairwiseAggregator(int voters, int candidates, std::vector<std::uint64_t> truth_tables);

  /// Every pair follows voter i.
  static PairwiseAggregator projection(int voters, int candidates, int voter);
  /// Strict majority, split patterns decided by voter 0.
  static PairwiseAggregator majority_voter0_tiebreak(int voters, int candidates);
  /// Candidate number `index` of the lexicographic enumeration used by
  /// verify_arrow (pair 0 is the most significant digit).
  static PairwiseAggregator from_enumeration_index(int voters, int candidates, std::uint64_t index);

  int voters() const { return n_; }
  int candidates() const { return m_; }
  std::uint64_t truth_table(int pair) const { return tables_[pair]; }
  bool output(int pair, std::uint32_t pattern) const { return (tables_[pair] >> pattern & 1u) != 0; }

  bool operator==(const PairwiseAggregator&) const = default;

 private:
  int n_;
  int m_;
  std::vector<std::uint64_t> tables_;
};

/// Size of the pinned aggregator space, (2^(2^n - 2))^(m choose 2), or
/// nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> aggregator_space_size(int voters, int candidates);

/// Largest aggregator space verify_arrow scans without the scale override.
inline constexpr std::uint64_t kMaxAggregatorCandidates = 10'000'000;

/// Builds the rule whose output on every profile is the order encoded by the
/// aggregated pairwise outcomes; empty if some profile yields a cycle.
std::optional<VotingRule> assemble_rule(const PairwiseAggregator& aggregator);

/// The aggregator an IIA rule induces, or empty if the rule is not IIA or
/// not Pareto on some pair.
std::optional<PairwiseAggregator> aggregator_of(const VotingRule& f);

struct ArrowFinding {
  std::uint64_t candidate_index;
  VotingRule rule;
  std::optional<int> dictator;
};

struct ArrowReport {
  int voters = 0;
  int candidates = 0;
  std::uint64_t candidates_scanned = 0;
  std::vector<ArrowFinding> rules_found;
  bool all_dictators = true;
};

/// Enumerates every pinned aggregator, assembles it and records each total
/// rule found. Requires m >= 3. The scan is split into contiguous blocks
/// across `jobs` threads; findings are merged in enumeration order.
ArrowReport verify_arrow(int voters, int candidates, int jobs = 1);

struct ContradictionReport {
  int voters = 0;  // n, the electorate of the cylinder rule
  int candidates = 0;
  Rational epsilon;
  int y_order = 0;
  bool full_support = false;
  bool permutation_invariant = false;
  ForceProfile forces;
  std::vector<Rational> inner_forces;  // forces of g under the star distribution
  Rational last_voter_bound;           // 2 / (n * m!)
  bool last_voter_bound_holds = false;
  bool inner_bounds_hold = false;      // force_i >= inner_force_i / n for i < n-1
  bool last_voter_unique_least = false;
  bool phi_fixed = false;
  std::optional<int> dictator;
  bool g_is_iia = false;

  /// Phi-fixed and not a dictatorship.
  bool non_dictatorial_fixpoint() const { return phi_fixed && !dictator.has_value(); }
};

/// Replays the closing argument for a Pareto rule g on n-1 voters:
/// f = cylinder_extend(g), mu = lift of the star distribution at the last
/// voter. Throws std::invalid_argument when g is not Pareto or epsilon is
/// inadmissible; nothing is computed in that case.
ContradictionReport replay_contradiction(const VotingRule& g, const Rational& epsilon, int y_order);

}  // namespace arrowlab

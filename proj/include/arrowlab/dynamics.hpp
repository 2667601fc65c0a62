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

/// Probability under mu that f outputs voter i's ballot.
Rational force(const Distribution& mu, const VotingRule& f, int voter);

struct ForceProfile {
  std::vector<Rational> forces;
  std::vector<int> most_forceful;   // argmax, ascending
  std::vector<int> least_forceful;  // argmin, ascending

  bool unique_most_forceful() const { return most_forceful.size() == 1; }
};

ForceProfile force_profile(const Distribution& mu, const VotingRule& f);

/// Which most-forceful voter takes over the least-forceful ballots.
/// `min_index` is the standard choice; the others exist for experiments.
enum class TieBreak { min_index, max_index, seeded };

struct PhiOptions {
  TieBreak tie_break = TieBreak::min_index;
  std::uint64_t seed = 0;  // used by TieBreak::seeded only
};

int select_leader(const ForceProfile& forces, const PhiOptions& options = {});

/// Phi(f)(x) = f(y) where y_i = x_leader for every least-forceful voter i
/// and y_i = x_i otherwise. Requires mu to have full support. When all
/// forces tie every voter is least forceful and the result is f o s_leader.
VotingRule phi(const Distribution& mu, const VotingRule& f, const PhiOptions& options = {});

/// f ~ g iff f == g, or f == g o pi for some pi and f has a unique
/// most-forceful voter.
bool equivalent(const Distribution& mu, const VotingRule& f, const VotingRule& g);

/// An equivalence class, members sorted and deduplicated.
class OrbitClass {
 public:
  explicit OrbitClass(std::vector<VotingRule> members);

  std::span<const VotingRule> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const VotingRule& representative() const { return members_.front(); }
  bool contains(const VotingRule& f) const;

  bool operator==(const OrbitClass&) const = default;

 private:
  std::vector<VotingRule> members_;
};

/// {f} when the most-forceful voter is not unique, otherwise {f o pi | all pi}.
OrbitClass orbit_class(const Distribution& mu, const VotingRule& f);

/// The set of all dictators for the given dimensions.
OrbitClass dictator_class(int voters, int candidates);

/// [Phi(f)] for the class representative. Requires mu to have full support
/// and be invariant under voter permutations.
OrbitClass phi_quotient(const Distribution& mu, const OrbitClass& c, const PhiOptions& options = {});

/// Diagnostic: true iff every member of `c` yields the same image class.
bool phi_quotient_is_well_defined(const Distribution& mu, const OrbitClass& c, const PhiOptions& options = {});

struct TraceStep {
  VotingRule rule;
  ForceProfile forces;
};

enum class Termination { fixpoint, step_limit };

struct IterationTrace {
  /// steps[k+1] = phi(steps[k]). On a fixpoint the final repeated rule is
  /// included, so the last two entries are equal.
  std::vector<TraceStep> steps;
  Termination terminated_by = Termination::step_limit;
  bool fixpoint_is_dictatorship = false;

  /// Number of phi applications before the rule stopped changing.
  std::size_t fixpoint_step() const { return steps.size() - 2; }
};

/// Applies phi at most `max_steps` times, stopping as soon as a rule maps to
/// itself.
IterationTrace iterate_phi(const Distribution& mu, const VotingRule& f, std::size_t max_steps,
                           const PhiOptions& options = {});

struct CollapseOutcome {
  VotingRule rule;
  VotingRule iterate;              // n-fold phi image
  bool collapsed = false;          // iterate == f o s_i for some i
  int collapse_voter = -1;         // that i, when collapsed
  bool iterate_is_dictatorship = false;
  bool phi_fixed = false;          // phi(rule) == rule
};

struct CollapseReport {
  std::vector<CollapseOutcome> outcomes;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

/// Records, per rule, whether n applications of phi land on some f o s_i.
/// Report-only: nothing is asserted. Requires a full-support,
/// permutation-invariant mu.
CollapseReport check_collapse_conjecture(const Distribution& mu, std::span<const VotingRule> rules, int jobs = 1);

}  // namespace arrowlab

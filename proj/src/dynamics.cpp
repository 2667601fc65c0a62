#include "arrowlab/dynamics.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

#include "arrowlab/parallel.hpp"
#include "arrowlab/random.hpp"

namespace arrowlab {

namespace {

void require_matching(const Distribution& mu, const VotingRule& f) {
  if (mu.voters() != f.voters() || mu.candidates() != f.candidates()) {
    throw std::invalid_argument("distribution does not match the rule's dimensions");
  }
}

void require_full_support(const Distribution& mu) {
  if (!has_full_support(mu)) throw std::invalid_argument("phi requires a distribution with full support");
}

void require_invariant(const Distribution& mu) {
  require_full_support(mu);
  if (!is_permutation_invariant(mu)) {
    throw std::invalid_argument("the quotient map requires a permutation-invariant distribution");
  }
}

}  // namespace

Rational force(const Distribution& mu, const VotingRule& f, int voter) {
  require_matching(mu, f);
  if (voter < 0 || voter >= f.voters()) throw std::out_of_range("voter out of range");
  const ProfileSpace space(f.voters(), f.candidates());
  Rational total;
  for (std::size_t k = 0; k < space.size(); ++k) {
    if (f.at(k) == space.digit(k, voter)) total += mu.weight(k);
  }
  return total;
}

ForceProfile force_profile(const Distribution& mu, const VotingRule& f) {
  require_matching(mu, f);
  const int n = f.voters();
  const ProfileSpace space(n, f.candidates());
  ForceProfile out;
  out.forces.assign(n, Rational());
  std::vector<int> digits(n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    for (int i = 0; i < n; ++i) {
      if (f.at(k) == digits[i]) out.forces[i] += mu.weight(k);
    }
  }
  const auto [lo, hi] = std::minmax_element(out.forces.begin(), out.forces.end());
  for (int i = 0; i < n; ++i) {
    if (out.forces[i] == *hi) out.most_forceful.push_back(i);
    if (out.forces[i] == *lo) out.least_forceful.push_back(i);
  }
  return out;
}

int select_leader(const ForceProfile& forces, const PhiOptions& options) {
  const auto& most = forces.most_forceful;
  switch (options.tie_break) {
    case TieBreak::min_index: return most.front();
    case TieBreak::max_index: return most.back();
    case TieBreak::seeded: {
      std::mt19937_64 rng(options.seed);
      return most[uniform_index(rng, most.size())];
    }
  }
  return most.front();
}

VotingRule phi(const Distribution& mu, const VotingRule& f, const PhiOptions& options) {
  require_matching(mu, f);
  require_full_support(mu);
  const int n = f.voters();
  const ForceProfile forces = force_profile(mu, f);
  const int leader = select_leader(forces, options);
  const ProfileSpace space(n, f.candidates());
  std::vector<std::uint16_t> table(space.size());
  std::vector<int> digits(n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    const int lead_ballot = digits[leader];
    for (int i : forces.least_forceful) digits[i] = lead_ballot;
    table[k] = static_cast<std::uint16_t>(f.at(space.index(digits)));
  }
  return VotingRule(n, f.candidates(), std::move(table));
}

bool equivalent(const Distribution& mu, const VotingRule& f, const VotingRule& g) {
  require_same_shape(f, g);
  if (f == g) return true;
  if (!force_profile(mu, f).unique_most_forceful()) return false;
  for (const auto& pi : VoterPermutation::all(f.voters())) {
    if (compose_voter_permutation(g, pi) == f) return true;
  }
  return false;
}

OrbitClass::OrbitClass(std::vector<VotingRule> members) : members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("an orbit class cannot be empty");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool OrbitClass::contains(const VotingRule& f) const {
  return std::binary_search(members_.begin(), members_.end(), f);
}

OrbitClass orbit_class(const Distribution& mu, const VotingRule& f) {
  if (!force_profile(mu, f).unique_most_forceful()) return OrbitClass({f});
  std::vector<VotingRule> members;
  for (const auto& pi : VoterPermutation::all(f.voters())) members.push_back(compose_voter_permutation(f, pi));
  return OrbitClass(std::move(members));
}

OrbitClass dictator_class(int voters, int candidates) {
  std::vector<VotingRule> members;
  for (int i = 0; i < voters; ++i) members.push_back(dictator(voters, candidates, i));
  return OrbitClass(std::move(members));
}

OrbitClass phi_quotient(const Distribution& mu, const OrbitClass& c, const PhiOptions& options) {
  require_invariant(mu);
  return orbit_class(mu, phi(mu, c.representative(), options));
}

bool phi_quotient_is_well_defined(const Distribution& mu, const OrbitClass& c, const PhiOptions& options) {
  require_invariant(mu);
  const OrbitClass image = orbit_class(mu, phi(mu, c.representative(), options));
  for (const auto& member : c.members()) {
    if (!(orbit_class(mu, phi(mu, member, options)) == image)) return false;
  }
  return true;
}

IterationTrace iterate_phi(const Distribution& mu, const VotingRule& f, std::size_t max_steps,
                           const PhiOptions& options) {
  IterationTrace trace;
  trace.steps.push_back({f, force_profile(mu, f)});
  for (std::size_t step = 0; step < max_steps; ++step) {
    VotingRule next = phi(mu, trace.steps.back().rule, options);
    const bool fixed = next == trace.steps.back().rule;
    ForceProfile forces = fixed ? trace.steps.back().forces : force_profile(mu, next);
    trace.steps.push_back({std::move(next), std::move(forces)});
    if (fixed) {
      trace.terminated_by = Termination::fixpoint;
      trace.fixpoint_is_dictatorship = is_dictatorship(trace.steps.back().rule).has_value();
      return trace;
    }
  }
  trace.terminated_by = Termination::step_limit;
  return trace;
}

CollapseReport check_collapse_conjecture(const Distribution& mu, std::span<const VotingRule> rules, int jobs) {
  require_invariant(mu);
  std::vector<std::optional<CollapseOutcome>> slots(rules.size());
  parallel_for(rules.size(), jobs, [&](std::size_t r) {
    const VotingRule& f = rules[r];
    VotingRule iterate = f;
    for (int step = 0; step < f.voters(); ++step) iterate = phi(mu, iterate);
    CollapseOutcome outcome{f, iterate};
    for (int i = 0; i < f.voters() && !outcome.collapsed; ++i) {
      if (iterate == compose_collapse(f, i)) {
        outcome.collapsed = true;
        outcome.collapse_voter = i;
      }
    }
    outcome.iterate_is_dictatorship = is_dictatorship(iterate).has_value();
    outcome.phi_fixed = phi(mu, f) == f;
    slots[r] = std::move(outcome);
  });
  CollapseReport report;
  for (auto& slot : slots) {
    (slot->collapsed ? report.passed : report.failed) += 1;
    report.outcomes.push_back(std::move(*slot));
  }
  return report;
}

}  // namespace arrowlab

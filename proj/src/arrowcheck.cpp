#include "arrowlab/arrowcheck.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "arrowlab/parallel.hpp"

namespace arrowlab {

namespace {

int pattern_count(int voters) { return 1 << voters; }
std::uint32_t all_ones(int voters) { return static_cast<std::uint32_t>(pattern_count(voters) - 1); }
int free_bits(int voters) { return pattern_count(voters) - 2; }

void check_aggregator_scale(int voters, int candidates) {
  check_scale(voters, candidates);
  if (voters > 6) throw ScaleError("pairwise aggregators support at most 6 voters");
  if (pair_count(candidates) > 32) throw ScaleError("too many candidate pairs for a tournament bitmask");
}

/// patterns[k * pairs + p]: bit i set iff voter i ranks the lower candidate
/// of pair p first on profile k.
std::vector<std::uint32_t> profile_patterns(const ProfileSpace& space) {
  const auto& catalog = OrderCatalog::of(space.candidates());
  const int pairs = pair_count(space.candidates());
  const int n = space.voters();
  std::vector<std::uint32_t> out(space.size() * static_cast<std::size_t>(pairs));
  std::vector<int> digits(n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    for (int p = 0; p < pairs; ++p) {
      std::uint32_t pattern = 0;
      for (int i = 0; i < n; ++i) pattern |= (catalog.pair_bits(static_cast<std::size_t>(digits[i])) >> p & 1u) << i;
      out[k * static_cast<std::size_t>(pairs) + static_cast<std::size_t>(p)] = pattern;
    }
  }
  return out;
}

/// Fills `table` and returns true when every profile yields an order.
bool assemble_into(const PairwiseAggregator& agg, const ProfileSpace& space,
                   const std::vector<std::uint32_t>& patterns, std::vector<std::uint16_t>* table) {
  const auto& catalog = OrderCatalog::of(space.candidates());
  const std::size_t pairs = static_cast<std::size_t>(pair_count(space.candidates()));
  for (std::size_t k = 0; k < space.size(); ++k) {
    std::uint32_t tournament = 0;
    for (std::size_t p = 0; p < pairs; ++p) {
      if (agg.output(static_cast<int>(p), patterns[k * pairs + p])) tournament |= 1u << p;
    }
    const int order = catalog.order_for_tournament(tournament);
    if (order < 0) return false;
    if (table != nullptr) (*table)[k] = static_cast<std::uint16_t>(order);
  }
  return true;
}

}  // namespace

PairwiseAggregator::PairwiseAggregator(int voters, int candidates, std::vector<std::uint64_t> truth_tables)
    : n_(voters), m_(candidates), tables_(std::move(truth_tables)) {
  check_aggregator_scale(voters, candidates);
  if (tables_.size() != static_cast<std::size_t>(pair_count(candidates))) {
    throw std::invalid_argument("need one truth table per candidate pair");
  }
  const std::uint32_t top = all_ones(voters);
  const std::uint64_t valid = pattern_count(voters) == 64 ? ~0ULL : (1ULL << pattern_count(voters)) - 1;
  for (auto t : tables_) {
    if ((t & ~valid) != 0) throw std::invalid_argument("truth table has bits beyond the pattern range");
    if ((t >> top & 1u) == 0 || (t & 1u) != 0) throw std::invalid_argument("unanimity rows must be pinned");
  }
}

PairwiseAggregator PairwiseAggregator::projection(int voters, int candidates, int voter) {
  if (voter < 0 || voter >= voters) throw std::out_of_range("projection voter out of range");
  std::uint64_t t = 0;
  for (int pattern = 0; pattern < pattern_count(voters); ++pattern) {
    if (pattern >> voter & 1) t |= 1ULL << pattern;
  }
  return PairwiseAggregator(voters, candidates, std::vector<std::uint64_t>(pair_count(candidates), t));
}

PairwiseAggregator PairwiseAggregator::majority_voter0_tiebreak(int voters, int candidates) {
  std::uint64_t t = 0;
  for (int pattern = 0; pattern < pattern_count(voters); ++pattern) {
    const int yes = __builtin_popcount(static_cast<unsigned>(pattern));
    const int no = voters - yes;
    if (yes > no || (yes == no && (pattern & 1))) t |= 1ULL << pattern;
  }
  return PairwiseAggregator(voters, candidates, std::vector<std::uint64_t>(pair_count(candidates), t));
}

PairwiseAggregator PairwiseAggregator::from_enumeration_index(int voters, int candidates, std::uint64_t index) {
  check_aggregator_scale(voters, candidates);
  const int pairs = pair_count(candidates);
  const int width = free_bits(voters);
  const std::uint64_t mask = width == 0 ? 0 : (width >= 64 ? ~0ULL : (1ULL << width) - 1);
  std::vector<std::uint64_t> tables(pairs);
  for (int p = pairs - 1; p >= 0; --p) {
    const std::uint64_t digit = width == 0 ? 0 : index & mask;
    if (width > 0) index >>= width;
    // Free bit j is pattern j + 1; pattern 0 is pinned low, all-ones high.
    tables[p] = (digit << 1) | (1ULL << all_ones(voters));
  }
  if (index != 0) throw std::out_of_range("aggregator index out of range");
  return PairwiseAggregator(voters, candidates, std::move(tables));
}

std::optional<std::uint64_t> aggregator_space_size(int voters, int candidates) {
  const long double bits = static_cast<long double>(free_bits(voters)) * pair_count(candidates);
  if (bits >= 63) return std::nullopt;
  return std::uint64_t{1} << static_cast<int>(bits);
}

std::optional<VotingRule> assemble_rule(const PairwiseAggregator& aggregator) {
  const ProfileSpace space(aggregator.voters(), aggregator.candidates());
  const auto patterns = profile_patterns(space);
  std::vector<std::uint16_t> table(space.size());
  if (!assemble_into(aggregator, space, patterns, &table)) return std::nullopt;
  return VotingRule(aggregator.voters(), aggregator.candidates(), std::move(table));
}

std::optional<PairwiseAggregator> aggregator_of(const VotingRule& f) {
  if (!is_iia(f)) return std::nullopt;
  const int n = f.voters();
  const int m = f.candidates();
  const ProfileSpace space(n, m);
  const auto patterns = profile_patterns(space);
  const auto& catalog = OrderCatalog::of(m);
  const std::size_t pairs = static_cast<std::size_t>(pair_count(m));
  std::vector<std::uint64_t> tables(pairs, 0);
  for (std::size_t k = 0; k < space.size(); ++k) {
    const std::uint32_t out = catalog.pair_bits(f.at(k));
    for (std::size_t p = 0; p < pairs; ++p) {
      if (out >> p & 1u) tables[p] |= 1ULL << patterns[k * pairs + p];
    }
  }
  try {
    return PairwiseAggregator(n, m, std::move(tables));
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // unanimity row violated: IIA but not Pareto
  }
}

ArrowReport verify_arrow(int voters, int candidates, int jobs) {
  if (candidates < 3) throw std::invalid_argument("Arrow verification needs at least three candidates");
  check_aggregator_scale(voters, candidates);
  const auto total = aggregator_space_size(voters, candidates);
  if (!total || (*total > kMaxAggregatorCandidates && !scale_override_enabled())) {
    throw ScaleError("aggregator space for (voters=" + std::to_string(voters) + ", candidates=" +
                     std::to_string(candidates) + ") exceeds " + std::to_string(kMaxAggregatorCandidates));
  }
  const ProfileSpace space(voters, candidates);
  const auto patterns = profile_patterns(space);

  constexpr std::uint64_t kBlocks = 256;
  const std::uint64_t block = (*total + kBlocks - 1) / kBlocks;
  std::vector<std::vector<std::uint64_t>> hits(kBlocks);
  parallel_for(kBlocks, jobs, [&](std::size_t b) {
    const std::uint64_t begin = b * block;
    const std::uint64_t end = std::min(*total, begin + block);
    for (std::uint64_t c = begin; c < end; ++c) {
      const auto agg = PairwiseAggregator::from_enumeration_index(voters, candidates, c);
      if (assemble_into(agg, space, patterns, nullptr)) hits[b].push_back(c);
    }
  });

  ArrowReport report;
  report.voters = voters;
  report.candidates = candidates;
  report.candidates_scanned = *total;
  for (const auto& block_hits : hits) {
    for (std::uint64_t c : block_hits) {
      auto rule = assemble_rule(PairwiseAggregator::from_enumeration_index(voters, candidates, c));
      auto dict = is_dictatorship(*rule);
      report.all_dictators = report.all_dictators && dict.has_value();
      report.rules_found.push_back({c, std::move(*rule), dict});
    }
  }
  return report;
}

ContradictionReport replay_contradiction(const VotingRule& g, const Rational& epsilon, int y_order) {
  const int m = g.candidates();
  if (m < 3) throw std::invalid_argument("the replay needs at least three candidates");
  if (!admissible_epsilon(epsilon, m)) {
    throw std::invalid_argument("epsilon " + epsilon.str() + " is outside (0, 1 - 2/m!)");
  }
  if (!is_pareto(g)) throw std::invalid_argument("the replay needs a Pareto rule");
  const int n = g.voters() + 1;

  const Distribution inner = star_distribution(g.voters(), m, epsilon, y_order);
  const Distribution mu = lift_distribution(inner, n - 1);
  const VotingRule f = cylinder_extend(g);

  ContradictionReport r;
  r.voters = n;
  r.candidates = m;
  r.epsilon = epsilon;
  r.y_order = y_order;
  r.full_support = has_full_support(mu);
  r.permutation_invariant = is_permutation_invariant(mu);
  r.forces = force_profile(mu, f);
  r.inner_forces = force_profile(inner, g).forces;
  r.last_voter_bound = Rational(2, static_cast<long>(static_cast<std::size_t>(n) * factorial(m)));
  r.last_voter_bound_holds = r.forces.forces[n - 1] <= r.last_voter_bound;
  r.inner_bounds_hold = true;
  for (int i = 0; i < n - 1; ++i) {
    if (r.forces.forces[i] < r.inner_forces[i] / Rational(n)) r.inner_bounds_hold = false;
  }
  r.last_voter_unique_least = r.forces.least_forceful == std::vector<int>{n - 1};
  r.phi_fixed = phi(mu, f) == f;
  r.dictator = is_dictatorship(f);
  r.g_is_iia = is_iia(g);
  return r;
}

}  // namespace arrowlab

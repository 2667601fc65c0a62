#include "arrowlab/rules.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "arrowlab/random.hpp"

namespace arrowlab {

namespace {

/// Pairs on which every ballot ranks the lower-indexed candidate first
/// (`above`) or last (`below`).
struct Unanimity {
  std::uint32_t above;
  std::uint32_t below;
};

Unanimity unanimity(std::span<const int> digits, const OrderCatalog& catalog) {
  Unanimity u{catalog.all_pairs_mask(), catalog.all_pairs_mask()};
  for (int d : digits) {
    const std::uint32_t bits = catalog.pair_bits(static_cast<std::size_t>(d));
    u.above &= bits;
    u.below &= ~bits & catalog.all_pairs_mask();
  }
  return u;
}

void extend(int m, const std::vector<std::vector<bool>>& must_precede, std::vector<int>& ranking,
            std::vector<bool>& placed, std::vector<LinearOrder>& out) {
  if (static_cast<int>(ranking.size()) == m) {
    out.emplace_back(ranking);
    return;
  }
  for (int c = 0; c < m; ++c) {
    if (placed[c]) continue;
    bool free = true;
    for (int d = 0; d < m && free; ++d) {
      if (!placed[d] && must_precede[d][c]) free = false;
    }
    if (!free) continue;
    placed[c] = true;
    ranking.push_back(c);
    extend(m, must_precede, ranking, placed, out);
    ranking.pop_back();
    placed[c] = false;
  }
}

template <class ScoreFn>
VotingRule scored_rule(int voters, int candidates, ScoreFn score) {
  const ProfileSpace space(voters, candidates);
  std::vector<std::uint16_t> table(space.size());
  std::vector<int> digits(voters);
  std::vector<long> scores(candidates);
  std::vector<int> ranking(candidates);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    score(digits, scores);
    std::iota(ranking.begin(), ranking.end(), 0);
    std::stable_sort(ranking.begin(), ranking.end(), [&](int a, int b) { return scores[a] > scores[b]; });
    table[k] = static_cast<std::uint16_t>(order_index(LinearOrder(ranking)));
  }
  return VotingRule(voters, candidates, std::move(table));
}

}  // namespace

VotingRule::VotingRule(int voters, int candidates, std::vector<std::uint16_t> table)
    : n_(voters), m_(candidates), table_(std::move(table)) {
  check_scale(voters, candidates);
  const std::size_t expected = int_pow(factorial(candidates), voters);
  if (table_.size() != expected) {
    throw std::invalid_argument("rule table has " + std::to_string(table_.size()) + " entries, expected " +
                                std::to_string(expected));
  }
  const std::size_t orders = factorial(candidates);
  for (auto entry : table_) {
    if (entry >= orders) throw std::invalid_argument("rule table entry is not an order index");
  }
}

std::strong_ordering VotingRule::operator<=>(const VotingRule& other) const {
  if (auto c = n_ <=> other.n_; c != 0) return c;
  if (auto c = m_ <=> other.m_; c != 0) return c;
  return std::lexicographical_compare_three_way(table_.begin(), table_.end(), other.table_.begin(),
                                                other.table_.end());
}

void require_same_shape(const VotingRule& f, const VotingRule& g) {
  if (f.voters() != g.voters() || f.candidates() != g.candidates()) {
    throw std::invalid_argument("voting rules have different dimensions");
  }
}

LinearOrder evaluate(const VotingRule& f, const Profile& profile) {
  if (profile.voters() != f.voters() || profile.candidates() != f.candidates()) {
    throw std::invalid_argument("profile does not match the rule's dimensions");
  }
  return OrderCatalog::of(f.candidates()).order(f.at(profile_index(profile, f.candidates())));
}

VotingRule dictator(int voters, int candidates, int voter) {
  if (voter < 0 || voter >= voters) throw std::out_of_range("dictator voter out of range");
  const ProfileSpace space(voters, candidates);
  std::vector<std::uint16_t> table(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) table[k] = static_cast<std::uint16_t>(space.digit(k, voter));
  return VotingRule(voters, candidates, std::move(table));
}

VotingRule constant_rule(int voters, int candidates, int order) {
  if (order < 0 || static_cast<std::size_t>(order) >= factorial(candidates)) {
    throw std::out_of_range("order index out of range");
  }
  const ProfileSpace space(voters, candidates);
  return VotingRule(voters, candidates, std::vector<std::uint16_t>(space.size(), static_cast<std::uint16_t>(order)));
}

bool is_pareto(const VotingRule& f) {
  const ProfileSpace space(f.voters(), f.candidates());
  const auto& catalog = OrderCatalog::of(f.candidates());
  std::vector<int> digits(f.voters());
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    const Unanimity u = unanimity(digits, catalog);
    const std::uint32_t out = catalog.pair_bits(f.at(k));
    if ((out & u.above) != u.above || (out & u.below) != 0) return false;
  }
  return true;
}

bool is_iia(const VotingRule& f) {
  const int n = f.voters();
  const int m = f.candidates();
  const ProfileSpace space(n, m);
  const auto& catalog = OrderCatalog::of(m);
  const int pairs = pair_count(m);
  // seen[pair][pattern]: -1 unseen, otherwise the output comparison bit.
  std::vector<std::vector<int>> seen(pairs, std::vector<int>(std::size_t{1} << n, -1));
  std::vector<int> digits(n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    const std::uint32_t out = catalog.pair_bits(f.at(k));
    for (int p = 0; p < pairs; ++p) {
      std::size_t pattern = 0;
      for (int i = 0; i < n; ++i) {
        if (catalog.pair_bits(static_cast<std::size_t>(digits[i])) >> p & 1u) pattern |= std::size_t{1} << i;
      }
      const int bit = static_cast<int>(out >> p & 1u);
      int& slot = seen[p][pattern];
      if (slot < 0) {
        slot = bit;
      } else if (slot != bit) {
        return false;
      }
    }
  }
  return true;
}

std::optional<int> is_dictatorship(const VotingRule& f) {
  const ProfileSpace space(f.voters(), f.candidates());
  for (int i = 0; i < f.voters(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < space.size() && match; ++k) match = f.at(k) == space.digit(k, i);
    if (match) return i;
  }
  return std::nullopt;
}

VotingRule compose_voter_permutation(const VotingRule& f, const VoterPermutation& pi) {
  if (pi.size() != f.voters()) throw std::invalid_argument("permutation size does not match the rule");
  const int n = f.voters();
  const ProfileSpace space(n, f.candidates());
  std::vector<std::uint16_t> table(space.size());
  std::vector<int> digits(n);
  std::vector<int> permuted(n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    for (int i = 0; i < n; ++i) permuted[i] = digits[pi(i)];
    table[k] = static_cast<std::uint16_t>(f.at(space.index(permuted)));
  }
  return VotingRule(n, f.candidates(), std::move(table));
}

VotingRule compose_collapse(const VotingRule& f, int voter) {
  if (voter < 0 || voter >= f.voters()) throw std::out_of_range("collapse voter out of range");
  const ProfileSpace space(f.voters(), f.candidates());
  std::vector<std::uint16_t> table(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    table[k] = static_cast<std::uint16_t>(f.at(space.unanimous(space.digit(k, voter))));
  }
  return VotingRule(f.voters(), f.candidates(), std::move(table));
}

VotingRule cylinder_extend(const VotingRule& g) {
  const int n = g.voters() + 1;
  const ProfileSpace space(n, g.candidates());
  std::vector<std::uint16_t> table(space.size());
  // The last voter is the least significant digit.
  for (std::size_t k = 0; k < space.size(); ++k) table[k] = static_cast<std::uint16_t>(g.at(k / space.base()));
  return VotingRule(n, g.candidates(), std::move(table));
}

std::vector<int> pareto_consistent_orders(std::span<const int> digits, int candidates) {
  const auto& catalog = OrderCatalog::of(candidates);
  const Unanimity u = unanimity(digits, catalog);
  std::vector<std::vector<bool>> must_precede(candidates, std::vector<bool>(candidates, false));
  for (int a = 0; a < candidates; ++a) {
    for (int b = a + 1; b < candidates; ++b) {
      const int p = pair_index(a, b, candidates);
      if (u.above >> p & 1u) must_precede[a][b] = true;
      if (u.below >> p & 1u) must_precede[b][a] = true;
    }
  }
  std::vector<LinearOrder> extensions;
  std::vector<int> ranking;
  std::vector<bool> placed(candidates, false);
  extend(candidates, must_precede, ranking, placed, extensions);
  std::vector<int> out;
  out.reserve(extensions.size());
  for (const auto& order : extensions) out.push_back(static_cast<int>(order_index(order)));
  return out;
}

VotingRule random_pareto_rule(int voters, int candidates, std::uint64_t seed) {
  const ProfileSpace space(voters, candidates);
  std::mt19937_64 rng(seed);
  std::vector<std::uint16_t> table(space.size());
  std::vector<int> digits(voters);
  for (std::size_t k = 0; k < space.size(); ++k) {
    space.digits(k, digits);
    const auto options = pareto_consistent_orders(digits, candidates);
    table[k] = static_cast<std::uint16_t>(options[uniform_index(rng, options.size())]);
  }
  return VotingRule(voters, candidates, std::move(table));
}

VotingRule majority_with_canonical_tiebreak(int voters, int candidates) {
  const auto& catalog = OrderCatalog::of(candidates);
  // Scores are doubled so that a tied contest contributes 1 to each side.
  return scored_rule(voters, candidates, [&](std::span<const int> digits, std::vector<long>& scores) {
    std::fill(scores.begin(), scores.end(), 0L);
    for (int a = 0; a < candidates; ++a) {
      for (int b = a + 1; b < candidates; ++b) {
        const int p = pair_index(a, b, candidates);
        int support = 0;
        for (int d : digits) support += static_cast<int>(catalog.pair_bits(static_cast<std::size_t>(d)) >> p & 1u);
        const int against = static_cast<int>(digits.size()) - support;
        if (support > against) {
          scores[a] += 2;
        } else if (support < against) {
          scores[b] += 2;
        } else {
          scores[a] += 1;
          scores[b] += 1;
        }
      }
    }
  });
}

VotingRule borda_rule(int voters, int candidates) {
  const auto& catalog = OrderCatalog::of(candidates);
  return scored_rule(voters, candidates, [&](std::span<const int> digits, std::vector<long>& scores) {
    std::fill(scores.begin(), scores.end(), 0L);
    for (int d : digits) {
      const auto& order = catalog.order(static_cast<std::size_t>(d));
      for (int pos = 0; pos < candidates; ++pos) scores[order.candidate_at(pos)] += candidates - 1 - pos;
    }
  });
}

std::uint64_t table_digest(const VotingRule& f) {
  std::uint64_t h = 14695981039346656037ULL;
  for (std::uint16_t entry : f.table()) {
    for (int byte = 0; byte < 2; ++byte) {
      h ^= static_cast<std::uint64_t>((entry >> (8 * byte)) & 0xFFu);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace arrowlab

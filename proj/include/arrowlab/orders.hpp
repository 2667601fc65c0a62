#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace arrowlab {

/// Thrown when (voters, candidates) exceed the exhaustive-scan bounds.
class ScaleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxVoters = 4;
inline constexpr int kMaxCandidates = 4;
inline constexpr std::size_t kMaxTableSize = 331776;  // 24^4

/// True when ARROWLAB_SCALE_OVERRIDE is set to a non-empty value other than "0".
bool scale_override_enabled();

/// Throws ScaleError unless n >= 1, m >= 1 and both sit inside the bounds
/// above (or the override is active).
void check_scale(int voters, int candidates);

std::size_t factorial(int k);
std::size_t int_pow(std::size_t base, int exponent);

/// A strict total order on candidates {0, ..., m-1}, most preferred first.
class LinearOrder {
 public:
  explicit LinearOrder(std::vector<int> ranking);

  int size() const { return static_cast<int>(ranking_.size()); }
  std::span<const int> ranking() const { return ranking_; }
  int candidate_at(int position) const { return ranking_[position]; }
  int position_of(int candidate) const { return position_[candidate]; }

  bool operator==(const LinearOrder& other) const { return ranking_ == other.ranking_; }
  auto operator<=>(const LinearOrder& other) const { return ranking_ <=> other.ranking_; }

 private:
  std::vector<int> ranking_;
  std::vector<int> position_;
};

/// True iff `a` is ranked above `b`. Rejects a == b and out-of-range candidates.
bool prefers(const LinearOrder& order, int a, int b);

/// All m! orders in lexicographic order of their ranking sequences.
std::vector<LinearOrder> enumerate_orders(int m);

/// Lexicographic rank of `order` among all orders of its size.
std::size_t order_index(const LinearOrder& order);
LinearOrder order_from_index(std::size_t index, int m);

/// Unordered candidate pairs (a < b), enumerated (0,1), (0,2), ..., (m-2,m-1).
int pair_count(int m);
int pair_index(int a, int b, int m);

/// Per-m lookup tables shared by the hot loops. Bit `pair_index(a,b)` of
/// `pair_bits(k)` is set iff order k ranks a above b (a < b).
class OrderCatalog {
 public:
  static const OrderCatalog& of(int m);

  int candidates() const { return m_; }
  std::size_t size() const { return orders_.size(); }
  const LinearOrder& order(std::size_t index) const { return orders_[index]; }
  std::uint32_t pair_bits(std::size_t index) const { return pair_bits_[index]; }
  std::uint32_t all_pairs_mask() const { return all_pairs_mask_; }
  /// Order index whose pair bits equal `bits`, or -1 when `bits` encodes a
  /// cyclic tournament.
  int order_for_tournament(std::uint32_t bits) const;

 private:
  explicit OrderCatalog(int m);

  int m_;
  std::vector<LinearOrder> orders_;
  std::vector<std::uint32_t> pair_bits_;
  std::uint32_t all_pairs_mask_ = 0;
  std::vector<int> tournament_;
  std::unordered_map<std::uint32_t, int> sparse_tournament_;
};

/// A bijection on voters {0, ..., n-1}.
class VoterPermutation {
 public:
  explicit VoterPermutation(std::vector<int> mapping);

  static VoterPermutation identity(int n);
  static VoterPermutation transposition(int n, int i, int j);
  /// All n! permutations in lexicographic order of their mappings.
  static std::vector<VoterPermutation> all(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator()(int voter) const { return mapping_[voter]; }
  std::span<const int> mapping() const { return mapping_; }

  VoterPermutation inverse() const;

  bool operator==(const VoterPermutation&) const = default;

 private:
  std::vector<int> mapping_;
};

/// Returns the map i -> first(second(i)). With this convention
/// apply(apply(p, first), second) == apply(p, compose(first, second)).
VoterPermutation compose(const VoterPermutation& first, const VoterPermutation& second);

/// One ballot per voter.
class Profile {
 public:
  explicit Profile(std::vector<LinearOrder> ballots);

  int voters() const { return static_cast<int>(ballots_.size()); }
  int candidates() const { return ballots_.front().size(); }
  const LinearOrder& ballot(int voter) const { return ballots_[voter]; }
  std::span<const LinearOrder> ballots() const { return ballots_; }

  bool operator==(const Profile&) const = default;

 private:
  std::vector<LinearOrder> ballots_;
};

/// Base-(m!) number with digit i = order_index(ballot i), voter 0 most significant.
std::size_t profile_index(const Profile& profile, int m);
Profile profile_from_index(std::size_t index, int n, int m);

/// Ballot i of the result is ballot pi(i) of the input.
Profile apply_voter_permutation(const Profile& profile, const VoterPermutation& pi);
/// Every ballot replaced by ballot `voter`.
Profile collapse_to_voter(const Profile& profile, int voter);
/// Removes ballot `voter`; requires at least two voters.
Profile drop_voter(const Profile& profile, int voter);
/// Inverse of drop_voter: inserts `ballot` at position `voter`.
Profile reassemble(const Profile& rest, const LinearOrder& ballot, int voter);

/// Index arithmetic over L(A)^n without materializing Profile objects.
/// Digits are order indices, digit 0 belongs to voter 0.
class ProfileSpace {
 public:
  ProfileSpace(int voters, int candidates);

  int voters() const { return n_; }
  int candidates() const { return m_; }
  std::size_t base() const { return base_; }
  std::size_t size() const { return size_; }

  int digit(std::size_t index, int voter) const {
    return static_cast<int>((index / weight_[voter]) % base_);
  }
  void digits(std::size_t index, std::span<int> out) const;
  std::size_t index(std::span<const int> digits) const;
  std::size_t weight(int voter) const { return weight_[voter]; }
  /// Index of the unanimous profile (k, ..., k).
  std::size_t unanimous(int order) const;

 private:
  int n_;
  int m_;
  std::size_t base_;
  std::size_t size_;
  std::vector<std::size_t> weight_;
};

}  // namespace arrowlab

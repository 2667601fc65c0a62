#include "arrowlab/orders.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

namespace arrowlab {

namespace {

constexpr int kCatalogLimit = 10;
constexpr int kDenseTournamentPairs = 21;

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

bool scale_override_enabled() {
  const char* value = std::getenv("ARROWLAB_SCALE_OVERRIDE");
  return value != nullptr && value[0] != '\0' && std::string(value) != "0";
}

void check_scale(int voters, int candidates) {
  if (voters < 1) throw ScaleError("at least one voter is required");
  if (candidates < 1) throw ScaleError("at least one candidate is required");
  if (scale_override_enabled()) {
    if (candidates > kCatalogLimit) throw ScaleError("candidate count exceeds the hard limit of 10");
    return;
  }
  if (voters > kMaxVoters || candidates > kMaxCandidates ||
      int_pow(factorial(candidates), voters) > kMaxTableSize) {
    throw ScaleError("(voters=" + std::to_string(voters) + ", candidates=" + std::to_string(candidates) +
                     ") exceeds the supported scale; set ARROWLAB_SCALE_OVERRIDE=1 to force");
  }
}

std::size_t factorial(int k) {
  std::size_t result = 1;
  for (int i = 2; i <= k; ++i) result *= static_cast<std::size_t>(i);
  return result;
}

std::size_t int_pow(std::size_t base, int exponent) {
  std::size_t result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

LinearOrder::LinearOrder(std::vector<int> ranking) : ranking_(std::move(ranking)) {
  require(!ranking_.empty(), "a linear order needs at least one candidate");
  const int m = static_cast<int>(ranking_.size());
  position_.assign(m, -1);
  for (int pos = 0; pos < m; ++pos) {
    const int c = ranking_[pos];
    require(c >= 0 && c < m, "ranking entry out of range");
    require(position_[c] < 0, "ranking repeats a candidate");
    position_[c] = pos;
  }
}

bool prefers(const LinearOrder& order, int a, int b) {
  const int m = order.size();
  if (a < 0 || a >= m || b < 0 || b >= m) throw std::out_of_range("candidate out of range");
  if (a == b) throw std::invalid_argument("prefers() needs two distinct candidates");
  return order.position_of(a) < order.position_of(b);
}

std::vector<LinearOrder> enumerate_orders(int m) {
  require(m >= 1, "enumerate_orders requires m >= 1");
  std::vector<int> ranking(m);
  std::iota(ranking.begin(), ranking.end(), 0);
  std::vector<LinearOrder> out;
  out.reserve(factorial(m));
  do {
    out.emplace_back(ranking);
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return out;
}

std::size_t order_index(const LinearOrder& order) {
  // Lehmer code: digit k counts later entries smaller than entry k.
  const int m = order.size();
  std::size_t index = 0;
  for (int k = 0; k < m; ++k) {
    std::size_t smaller = 0;
    for (int j = k + 1; j < m; ++j) {
      if (order.candidate_at(j) < order.candidate_at(k)) ++smaller;
    }
    index += smaller * factorial(m - 1 - k);
  }
  return index;
}

LinearOrder order_from_index(std::size_t index, int m) {
  require(m >= 1, "order_from_index requires m >= 1");
  if (index >= factorial(m)) throw std::out_of_range("order index out of range");
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> ranking;
  ranking.reserve(m);
  for (int k = m - 1; k >= 0; --k) {
    const std::size_t f = factorial(k);
    const std::size_t pick = index / f;
    index %= f;
    ranking.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return LinearOrder(std::move(ranking));
}

int pair_count(int m) { return m * (m - 1) / 2; }

int pair_index(int a, int b, int m) {
  if (a > b) std::swap(a, b);
  require(a != b, "pair_index needs two distinct candidates");
  // Pairs starting with a candidate below `a` come first.
  return a * m - a * (a + 1) / 2 + (b - a - 1);
}

OrderCatalog::OrderCatalog(int m) : m_(m), orders_(enumerate_orders(m)) {
  const int pairs = pair_count(m);
  all_pairs_mask_ = pairs == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << pairs) - 1);
  pair_bits_.reserve(orders_.size());
  for (const auto& order : orders_) {
    std::uint32_t bits = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        if (order.position_of(a) < order.position_of(b)) bits |= 1u << pair_index(a, b, m);
      }
    }
    pair_bits_.push_back(bits);
  }
  if (pairs <= kDenseTournamentPairs) {
    tournament_.assign(std::size_t{1} << pairs, -1);
    for (std::size_t k = 0; k < orders_.size(); ++k) tournament_[pair_bits_[k]] = static_cast<int>(k);
  } else {
    for (std::size_t k = 0; k < orders_.size(); ++k) sparse_tournament_.emplace(pair_bits_[k], static_cast<int>(k));
  }
}

int OrderCatalog::order_for_tournament(std::uint32_t bits) const {
  if (!tournament_.empty()) return tournament_[bits];
  const auto it = sparse_tournament_.find(bits);
  return it == sparse_tournament_.end() ? -1 : it->second;
}

const OrderCatalog& OrderCatalog::of(int m) {
  require(m >= 1 && m <= kCatalogLimit, "candidate count outside the catalog range");
  static std::array<std::unique_ptr<OrderCatalog>, kCatalogLimit + 1> catalogs;
  static std::array<std::once_flag, kCatalogLimit + 1> flags;
  std::call_once(flags[m], [m] { catalogs[m].reset(new OrderCatalog(m)); });
  return *catalogs[m];
}

VoterPermutation::VoterPermutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  require(!mapping_.empty(), "a voter permutation needs at least one voter");
  std::vector<bool> seen(mapping_.size(), false);
  for (int v : mapping_) {
    require(v >= 0 && v < size(), "permutation entry out of range");
    require(!seen[v], "permutation is not a bijection");
    seen[v] = true;
  }
}

VoterPermutation VoterPermutation::identity(int n) {
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  return VoterPermutation(std::move(mapping));
}

VoterPermutation VoterPermutation::transposition(int n, int i, int j) {
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  if (i < 0 || i >= n || j < 0 || j >= n) throw std::out_of_range("transposition voter out of range");
  std::swap(mapping[i], mapping[j]);
  return VoterPermutation(std::move(mapping));
}

std::vector<VoterPermutation> VoterPermutation::all(int n) {
  std::vector<int> mapping(n);
  std::iota(mapping.begin(), mapping.end(), 0);
  std::vector<VoterPermutation> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(mapping);
  } while (std::next_permutation(mapping.begin(), mapping.end()));
  return out;
}

VoterPermutation VoterPermutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (int i = 0; i < size(); ++i) inv[mapping_[i]] = i;
  return VoterPermutation(std::move(inv));
}

VoterPermutation compose(const VoterPermutation& first, const VoterPermutation& second) {
  if (first.size() != second.size()) throw std::invalid_argument("permutation sizes differ");
  std::vector<int> mapping(first.size());
  for (int i = 0; i < first.size(); ++i) mapping[i] = first(second(i));
  return VoterPermutation(std::move(mapping));
}

Profile::Profile(std::vector<LinearOrder> ballots) : ballots_(std::move(ballots)) {
  require(!ballots_.empty(), "a profile needs at least one voter");
  const int m = ballots_.front().size();
  for (const auto& b : ballots_) require(b.size() == m, "ballots rank different candidate sets");
}

std::size_t profile_index(const Profile& profile, int m) {
  require(profile.candidates() == m, "profile candidate count mismatch");
  const std::size_t base = factorial(m);
  std::size_t index = 0;
  for (const auto& ballot : profile.ballots()) index = index * base + order_index(ballot);
  return index;
}

Profile profile_from_index(std::size_t index, int n, int m) {
  require(n >= 1, "profile_from_index requires n >= 1");
  const std::size_t base = factorial(m);
  if (index >= int_pow(base, n)) throw std::out_of_range("profile index out of range");
  std::vector<LinearOrder> ballots;
  ballots.reserve(n);
  std::vector<std::size_t> digits(n);
  for (int i = n - 1; i >= 0; --i) {
    digits[i] = index % base;
    index /= base;
  }
  for (int i = 0; i < n; ++i) ballots.push_back(order_from_index(digits[i], m));
  return Profile(std::move(ballots));
}

Profile apply_voter_permutation(const Profile& profile, const VoterPermutation& pi) {
  if (profile.voters() != pi.size()) throw std::invalid_argument("permutation and profile lengths differ");
  std::vector<LinearOrder> ballots;
  ballots.reserve(profile.voters());
  for (int i = 0; i < profile.voters(); ++i) ballots.push_back(profile.ballot(pi(i)));
  return Profile(std::move(ballots));
}

Profile collapse_to_voter(const Profile& profile, int voter) {
  if (voter < 0 || voter >= profile.voters()) throw std::out_of_range("voter out of range");
  return Profile(std::vector<LinearOrder>(profile.voters(), profile.ballot(voter)));
}

Profile drop_voter(const Profile& profile, int voter) {
  if (profile.voters() < 2) throw std::invalid_argument("drop_voter needs at least two voters");
  if (voter < 0 || voter >= profile.voters()) throw std::out_of_range("voter out of range");
  std::vector<LinearOrder> ballots(profile.ballots().begin(), profile.ballots().end());
  ballots.erase(ballots.begin() + voter);
  return Profile(std::move(ballots));
}

Profile reassemble(const Profile& rest, const LinearOrder& ballot, int voter) {
  if (voter < 0 || voter > rest.voters()) throw std::out_of_range("voter out of range");
  std::vector<LinearOrder> ballots(rest.ballots().begin(), rest.ballots().end());
  ballots.insert(ballots.begin() + voter, ballot);
  return Profile(std::move(ballots));
}

ProfileSpace::ProfileSpace(int voters, int candidates)
    : n_(voters), m_(candidates), base_(factorial(candidates)) {
  check_scale(voters, candidates);
  size_ = int_pow(base_, n_);
  weight_.resize(n_);
  std::size_t w = 1;
  for (int i = n_ - 1; i >= 0; --i) {
    weight_[i] = w;
    w *= base_;
  }
}

void ProfileSpace::digits(std::size_t index, std::span<int> out) const {
  for (int i = n_ - 1; i >= 0; --i) {
    out[i] = static_cast<int>(index % base_);
    index /= base_;
  }
}

std::size_t ProfileSpace::index(std::span<const int> digits) const {
  std::size_t index = 0;
  for (int i = 0; i < n_; ++i) index = index * base_ + static_cast<std::size_t>(digits[i]);
  return index;
}

std::size_t ProfileSpace::unanimous(int order) const {
  std::size_t index = 0;
  for (int i = 0; i < n_; ++i) index = index * base_ + static_cast<std::size_t>(order);
  return index;
}

}  // namespace arrowlab

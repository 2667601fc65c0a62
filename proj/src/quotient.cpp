#include "arrowlab/quotient.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

#include "arrowlab/parallel.hpp"
#include "arrowlab/random.hpp"

namespace arrowlab {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::vector<Rational>> matrix) : dist_(std::move(matrix)) {
  if (dist_.empty()) throw std::invalid_argument("a metric space needs at least one point");
  for (const auto& row : dist_) {
    if (row.size() != dist_.size()) throw std::invalid_argument("distance matrix is not square");
  }
}

FiniteMetricSpace FiniteMetricSpace::from_upper_triangle(std::size_t points, std::span<const Rational> upper) {
  if (upper.size() != points * (points - 1) / 2) {
    throw std::invalid_argument("upper triangle has the wrong number of entries");
  }
  std::vector<std::vector<Rational>> matrix(points, std::vector<Rational>(points));
  std::size_t k = 0;
  for (std::size_t x = 0; x < points; ++x) {
    for (std::size_t y = x + 1; y < points; ++y) {
      matrix[x][y] = upper[k];
      matrix[y][x] = upper[k];
      ++k;
    }
  }
  return FiniteMetricSpace(std::move(matrix));
}

std::vector<Rational> FiniteMetricSpace::upper_triangle() const {
  std::vector<Rational> out;
  for (std::size_t x = 0; x < size(); ++x) {
    for (std::size_t y = x + 1; y < size(); ++y) out.push_back(dist_[x][y]);
  }
  return out;
}

EquivalencePartition::EquivalencePartition(std::vector<int> class_of) : class_of_(std::move(class_of)) {}

EquivalencePartition EquivalencePartition::singletons(std::size_t points) {
  std::vector<int> ids(points);
  for (std::size_t i = 0; i < points; ++i) ids[i] = static_cast<int>(i);
  return EquivalencePartition(std::move(ids));
}

std::vector<std::vector<std::size_t>> EquivalencePartition::classes() const {
  std::map<int, std::size_t> slot;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t p = 0; p < class_of_.size(); ++p) {
    auto [it, inserted] = slot.emplace(class_of_[p], out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(p);
  }
  return out;
}

namespace {

/// (T v)_j = sign_j * v_{source_j}; preserves every l_p norm.
struct SignedPermutation {
  std::vector<int> source;
  std::vector<int> sign;

  std::vector<int> apply(const std::vector<int>& v) const {
    std::vector<int> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = sign[j] * v[source[j]];
    return out;
  }
};

SignedPermutation random_signed_permutation(std::mt19937_64& rng, int dim) {
  SignedPermutation t{std::vector<int>(dim), std::vector<int>(dim)};
  for (int j = 0; j < dim; ++j) t.source[j] = j;
  for (int j = dim - 1; j > 0; --j) std::swap(t.source[j], t.source[uniform_index(rng, j + 1)]);
  for (int j = 0; j < dim; ++j) t.sign[j] = uniform_index(rng, 2) == 0 ? 1 : -1;
  return t;
}

}  // namespace

MetricFixture random_orbit_fixture(std::uint64_t seed, std::size_t max_points) {
  if (max_points == 0) throw std::invalid_argument("a fixture needs at least one point");
  std::mt19937_64 rng(seed);
  const int dim = 2 + static_cast<int>(uniform_index(rng, 2));
  std::vector<SignedPermutation> group_gens;
  const std::size_t gen_count = 1 + uniform_index(rng, 2);
  for (std::size_t g = 0; g < gen_count; ++g) group_gens.push_back(random_signed_permutation(rng, dim));

  std::map<std::vector<int>, std::size_t> index_of;
  std::vector<std::vector<int>> points;
  std::vector<int> class_of;
  int next_class = 0;
  for (int attempt = 0; attempt < 24 && points.size() < max_points; ++attempt) {
    std::vector<int> start(dim);
    for (int& c : start) c = static_cast<int>(uniform_index(rng, 7)) - 3;
    if (index_of.count(start) != 0) continue;
    std::vector<std::vector<int>> orbit{start};
    std::map<std::vector<int>, bool> seen{{start, true}};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& t : group_gens) {
        auto image = t.apply(orbit[head]);
        if (seen.emplace(image, true).second) orbit.push_back(std::move(image));
      }
    }
    if (points.size() + orbit.size() > max_points) continue;
    for (auto& v : orbit) {
      index_of.emplace(v, points.size());
      points.push_back(std::move(v));
      class_of.push_back(next_class);
    }
    ++next_class;
  }
  if (points.empty()) {
    points.push_back(std::vector<int>(dim, 0));
    class_of.push_back(0);
    index_of.emplace(points.back(), 0);
  }

  const bool l1 = uniform_index(rng, 2) == 0;
  const Rational scale(1 + static_cast<long>(uniform_index(rng, 3)), 1 + static_cast<long>(uniform_index(rng, 4)));
  const std::size_t n = points.size();
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      long d = 0;
      for (int j = 0; j < dim; ++j) {
        const long diff = std::labs(static_cast<long>(points[x][j]) - points[y][j]);
        d = l1 ? d + diff : std::max(d, diff);
      }
      matrix[x][y] = Rational(d) * scale;
    }
  }
  std::vector<std::vector<std::size_t>> generators;
  for (const auto& t : group_gens) {
    std::vector<std::size_t> g(n);
    for (std::size_t p = 0; p < n; ++p) g[p] = index_of.at(t.apply(points[p]));
    generators.push_back(std::move(g));
  }
  return MetricFixture{FiniteMetricSpace(std::move(matrix)), EquivalencePartition(std::move(class_of)),
                       std::move(generators)};
}

Rational rule_distance(const Distribution& mu, const VotingRule& f, const VotingRule& g) {
  require_same_shape(f, g);
  if (mu.voters() != f.voters() || mu.candidates() != f.candidates()) {
    throw std::invalid_argument("distribution does not match the rules' dimensions");
  }
  Rational total;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.at(k) != g.at(k)) total += mu.weight(k);
  }
  return total;
}

FiniteMetricSpace rule_space(const Distribution& mu, std::span<const VotingRule> rules, int jobs) {
  const std::size_t n = rules.size();
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(n));
  parallel_for(n, jobs, [&](std::size_t x) {
    for (std::size_t y = x + 1; y < n; ++y) matrix[x][y] = rule_distance(mu, rules[x], rules[y]);
  });
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) matrix[y][x] = matrix[x][y];
  }
  return FiniteMetricSpace(std::move(matrix));
}

std::vector<std::vector<Rational>> quotient_chain_matrix(const FiniteMetricSpace& space,
                                                         const EquivalencePartition& partition) {
  const std::size_t n = space.size();
  if (partition.size() != n) throw std::invalid_argument("partition size does not match the space");
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) d[x][y] = partition.equivalent(x, y) ? Rational(0) : space.dist(x, y);
  }
  // Floyd-Warshall; every entry is finite since the graph is complete.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        Rational via = d[x][k] + d[k][y];
        if (via < d[x][y]) d[x][y] = std::move(via);
      }
    }
  }
  return d;
}

Rational quotient_distance_chain(const FiniteMetricSpace& space, const EquivalencePartition& partition,
                                 std::size_t x, std::size_t y) {
  if (x >= space.size() || y >= space.size()) throw std::out_of_range("point out of range");
  return quotient_chain_matrix(space, partition)[x][y];
}

Rational quotient_distance_orbit(const FiniteMetricSpace& space, const EquivalencePartition& partition,
                                 std::size_t x, std::size_t y) {
  if (x >= space.size() || y >= space.size()) throw std::out_of_range("point out of range");
  if (partition.size() != space.size()) throw std::invalid_argument("partition size does not match the space");
  std::optional<Rational> best;
  for (std::size_t a = 0; a < space.size(); ++a) {
    if (!partition.equivalent(a, x)) continue;
    for (std::size_t b = 0; b < space.size(); ++b) {
      if (!partition.equivalent(b, y)) continue;
      if (!best || space.dist(a, b) < *best) best = space.dist(a, b);
    }
  }
  return *best;
}

bool verify_isometry_orbits(const FiniteMetricSpace& space, const EquivalencePartition& partition,
                            std::span<const std::vector<std::size_t>> generators) {
  const std::size_t n = space.size();
  if (partition.size() != n) return false;
  for (const auto& g : generators) {
    if (g.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (std::size_t p : g) {
      if (p >= n || hit[p]) return false;
      hit[p] = true;
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (space.dist(g[x], g[y]) != space.dist(x, y)) return false;
      }
    }
  }
  // Orbits of a finite group generated by bijections are the connected
  // components of the generator graph.
  std::vector<int> orbit(n, -1);
  int next = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit[start] >= 0) continue;
    std::vector<std::size_t> stack{start};
    orbit[start] = next;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      for (const auto& g : generators) {
        if (orbit[g[p]] < 0) {
          orbit[g[p]] = next;
          stack.push_back(g[p]);
        }
      }
    }
    ++next;
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if ((orbit[x] == orbit[y]) != partition.equivalent(x, y)) return false;
    }
  }
  return true;
}

std::string axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::none: return "none";
    case Axiom::nonnegativity: return "nonnegativity";
    case Axiom::zero_self_distance: return "zero_self_distance";
    case Axiom::indiscernibles: return "identity_of_indiscernibles";
    case Axiom::symmetry: return "symmetry";
    case Axiom::triangle: return "triangle_inequality";
  }
  return "unknown";
}

MetricReport check_metric_axioms(const FiniteMetricSpace& space, bool pseudometric) {
  const std::size_t n = space.size();
  auto fail = [](Axiom a, std::size_t x, std::size_t y, std::size_t z = 0) { return MetricReport{false, a, x, y, z}; };
  for (std::size_t x = 0; x < n; ++x) {
    if (!space.dist(x, x).is_zero()) return fail(Axiom::zero_self_distance, x, x);
    for (std::size_t y = 0; y < n; ++y) {
      if (space.dist(x, y).sign() < 0) return fail(Axiom::nonnegativity, x, y);
      if (x != y && !pseudometric && space.dist(x, y).is_zero()) return fail(Axiom::indiscernibles, x, y);
      if (space.dist(x, y) != space.dist(y, x)) return fail(Axiom::symmetry, x, y);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (space.dist(x, z) > space.dist(x, y) + space.dist(y, z)) return fail(Axiom::triangle, x, y, z);
      }
    }
  }
  return {};
}

}  // namespace arrowlab

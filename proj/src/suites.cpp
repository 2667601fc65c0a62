#include <algorithm>
#include <optional>
#include <stdexcept>

#include "arrowlab/arrowcheck.hpp"
#include "arrowlab/cli.hpp"
#include "arrowlab/dynamics.hpp"
#include "arrowlab/parallel.hpp"
#include "arrowlab/quotient.hpp"
#include "arrowlab/random.hpp"

namespace arrowlab::cli {

namespace {

// Per-suite seed streams.
enum Salt : std::uint64_t { metric = 11, quotient = 12, isometry = 13, equivalence = 14, lift = 15, collapse = 16 };

std::vector<VotingRule> seeded_rules(int n, int m, std::uint64_t seed, std::uint64_t salt, std::size_t count,
                                     int jobs) {
  std::vector<std::optional<VotingRule>> slots(count);
  const std::uint64_t stream = derive_seed(seed, salt);
  parallel_for(count, jobs, [&](std::size_t k) { slots[k] = random_pareto_rule(n, m, derive_seed(stream, k)); });
  std::vector<VotingRule> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

Distribution lift_star(int n, int m, const RunConfig& cfg) {
  return lift_distribution(star_distribution(n - 1, m, parse_epsilon(cfg), cfg.y_index), n - 1);
}

Json skipped(const std::string& why) { return Json{{"skipped", why}}; }

std::size_t count_true(const std::vector<char>& flags) {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
}

std::vector<std::size_t> first_false(const std::vector<char>& flags, std::size_t limit = 10) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < flags.size() && out.size() < limit; ++k) {
    if (!flags[k]) out.push_back(k);
  }
  return out;
}

Rational dictator_gap_by_count(const Distribution& mu) {
  Rational total;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const Profile p = profile_from_index(k, mu.voters(), mu.candidates());
    if (!(p.ballot(0) == p.ballot(1))) total += mu.weight(k);
  }
  return total;
}

SuiteResult metric_suite(const RunConfig& cfg) {
  SuiteResult r{"metric", true, true, {}};
  const auto mu = build_distribution(cfg);
  auto rules = seeded_rules(cfg.n, cfg.m, cfg.seed, Salt::metric, 50, cfg.jobs);
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  const auto space = rule_space(mu, rules, cfg.jobs);
  const auto axioms = check_metric_axioms(space);
  r.details = {{"distribution", cfg.dist},
               {"rules", 50},
               {"distinct_rules", rules.size()},
               {"axioms_hold", axioms.ok},
               {"violated", axiom_name(axioms.violated)}};
  r.passed = axioms.ok;
  if (cfg.n >= 2) {
    const Rational d = rule_distance(mu, dictator(cfg.n, cfg.m, 0), dictator(cfg.n, cfg.m, 1));
    const Rational oracle = dictator_gap_by_count(mu);
    r.details["dict0_dict1_distance"] = d.str();
    r.details["dict0_dict1_count_oracle"] = oracle.str();
    r.passed = r.passed && d == oracle;
  }
  return r;
}

SuiteResult quotient_suite(const RunConfig& cfg) {
  constexpr std::size_t kFixtures = 100;
  SuiteResult r{"quotient", true, true, {}};
  std::vector<char> verified(kFixtures, 0);
  std::vector<char> agree(kFixtures, 0);
  std::vector<std::size_t> points(kFixtures, 0);
  const std::uint64_t stream = derive_seed(cfg.seed, Salt::quotient);
  parallel_for(kFixtures, cfg.jobs, [&](std::size_t k) {
    const auto fx = random_orbit_fixture(derive_seed(stream, k));
    points[k] = fx.space.size();
    verified[k] = verify_isometry_orbits(fx.space, fx.partition, fx.generators);
    const auto chain = quotient_chain_matrix(fx.space, fx.partition);
    bool same = true;
    for (std::size_t x = 0; x < fx.space.size(); ++x) {
      for (std::size_t y = 0; y < fx.space.size(); ++y) {
        same = same && chain[x][y] == quotient_distance_orbit(fx.space, fx.partition, x, y);
      }
    }
    agree[k] = same;
  });
  std::size_t pairs = 0;
  for (auto p : points) pairs += p * p;
  r.details = {{"fixtures", kFixtures},
               {"max_points", *std::max_element(points.begin(), points.end())},
               {"pairs_compared", pairs},
               {"isometry_orbits_verified", count_true(verified)},
               {"chain_equals_orbit", count_true(agree)},
               {"mismatched_fixtures", first_false(agree)}};
  r.passed = count_true(verified) == kFixtures && count_true(agree) == kFixtures;
  return r;
}

SuiteResult isometry_suite(const RunConfig& cfg) {
  constexpr std::size_t kRules = 200;
  SuiteResult r{"isometry", true, true, Json::array()};
  std::vector<std::pair<std::string, Distribution>> measures;
  measures.emplace_back("uniform", uniform_distribution(cfg.n, cfg.m));
  if (cfg.n >= 2 && cfg.m >= 3) measures.emplace_back("lift-star", lift_star(cfg.n, cfg.m, cfg));
  const auto rules = seeded_rules(cfg.n, cfg.m, cfg.seed, Salt::isometry, kRules, cfg.jobs);
  const auto perms = VoterPermutation::all(cfg.n);
  for (const auto& [name, mu] : measures) {
    std::vector<char> distance_ok(kRules, 0);
    std::vector<char> force_ok(kRules, 0);
    parallel_for(kRules, cfg.jobs, [&](std::size_t k) {
      const auto& f = rules[k];
      const auto& g = rules[(k + 1) % kRules];
      const Rational d = rule_distance(mu, f, g);
      const auto forces = force_profile(mu, f).forces;
      bool dist_same = true;
      bool force_same = true;
      for (const auto& pi : perms) {
        const auto fp = compose_voter_permutation(f, pi);
        dist_same = dist_same && rule_distance(mu, fp, compose_voter_permutation(g, pi)) == d;
        for (int i = 0; i < cfg.n; ++i) force_same = force_same && force(mu, fp, pi(i)) == forces[i];
      }
      distance_ok[k] = dist_same;
      force_ok[k] = force_same;
    });
    r.details.push_back({{"distribution", name},
                         {"rules", kRules},
                         {"permutations", perms.size()},
                         {"distance_preserved", count_true(distance_ok)},
                         {"forces_relabeled", count_true(force_ok)},
                         {"failing_rules", first_false(distance_ok)}});
    r.passed = r.passed && count_true(distance_ok) == kRules && count_true(force_ok) == kRules;
  }
  return r;
}

SuiteResult equivalence_suite(const RunConfig& cfg) {
  constexpr std::size_t kRules = 100;
  SuiteResult r{"equivalence", true, true, {}};

  Json dict = Json::array();
  for (int n : {2, 3}) {
    bool same = true;
    const auto mu = uniform_distribution(n, cfg.m);
    for (int i = 0; i < n; ++i) same = same && orbit_class(mu, dictator(n, cfg.m, i)) == dictator_class(n, cfg.m);
    dict.push_back({{"voters", n}, {"dict_is_a_class", same}});
    r.passed = r.passed && same;
  }

  const auto mu = build_distribution(cfg);
  const auto rules = seeded_rules(cfg.n, cfg.m, cfg.seed, Salt::equivalence, kRules, cfg.jobs);
  std::vector<char> well_defined(kRules, 0);
  std::vector<char> nontrivial(kRules, 0);
  std::vector<char> collapse_lemma(kRules, 0);
  parallel_for(kRules, cfg.jobs, [&](std::size_t k) {
    const auto& f = rules[k];
    const auto c = orbit_class(mu, f);
    nontrivial[k] = c.size() > 1;
    well_defined[k] = phi_quotient_is_well_defined(mu, c);
    std::vector<VotingRule> collapsed;
    for (int i = 0; i < cfg.n; ++i) collapsed.push_back(compose_collapse(f, i));
    const OrbitClass expected(collapsed);
    bool ok = true;
    for (int i = 0; i < cfg.n; ++i) {
      ok = ok && force_profile(mu, collapsed[i]).most_forceful == std::vector<int>{i};
      ok = ok && orbit_class(mu, collapsed[i]) == expected;
    }
    collapse_lemma[k] = ok;
  });
  r.details = {{"dict_classes", dict},
               {"distribution", cfg.dist},
               {"orbits", kRules},
               {"nontrivial_orbits", count_true(nontrivial)},
               {"phi_well_defined", count_true(well_defined)},
               {"ill_defined_orbits", first_false(well_defined)},
               {"collapse_lemma_holds", count_true(collapse_lemma)}};
  r.passed = r.passed && count_true(well_defined) == kRules && count_true(collapse_lemma) == kRules;
  return r;
}

SuiteResult lift_suite(const RunConfig& cfg) {
  constexpr std::size_t kRules = 200;
  SuiteResult r{"lift", true, true, Json::array()};
  if (cfg.n < 2 || cfg.m < 3) {
    r.details = skipped("needs at least two voters and three candidates");
    return r;
  }
  const int n = cfg.n;
  const Rational bound(2, static_cast<long>(static_cast<std::size_t>(n) * factorial(cfg.m)));
  const auto gs = seeded_rules(n - 1, cfg.m, cfg.seed, Salt::lift, kRules, cfg.jobs);
  std::vector<std::pair<std::string, Distribution>> inners;
  inners.emplace_back("uniform", uniform_distribution(n - 1, cfg.m));
  inners.emplace_back("star", star_distribution(n - 1, cfg.m, parse_epsilon(cfg), cfg.y_index));
  for (const auto& [name, nu] : inners) {
    const auto mu = lift_distribution(nu, n - 1);
    const bool mass = total_mass(mu) == Rational(1);
    const bool support = has_full_support(mu);
    const bool invariant = is_permutation_invariant(mu);
    std::vector<char> upper(kRules, 0);
    std::vector<char> lower(kRules, 0);
    std::vector<char> isolated(kRules, 0);
    std::vector<char> fixed(kRules, 0);
    std::vector<std::optional<Rational>> last(kRules);
    parallel_for(kRules, cfg.jobs, [&](std::size_t k) {
      const auto f = cylinder_extend(gs[k]);
      const auto outer = force_profile(mu, f);
      const auto inner = force_profile(nu, gs[k]).forces;
      last[k] = outer.forces[n - 1];
      upper[k] = outer.forces[n - 1] <= bound;
      bool lo = true;
      for (int i = 0; i < n - 1; ++i) lo = lo && outer.forces[i] >= inner[i] / Rational(n);
      lower[k] = lo;
      isolated[k] = outer.least_forceful == std::vector<int>{n - 1};
      fixed[k] = phi(mu, f) == f;
    });
    Rational max_last;
    for (const auto& v : last) max_last = std::max(max_last, *v);
    Json entry = {{"inner", name},
                  {"mass_is_one", mass},
                  {"full_support", support},
                  {"permutation_invariant", invariant},
                  {"rules", kRules},
                  {"last_voter_bound", bound.str()},
                  {"last_voter_bound_holds", count_true(upper)},
                  {"max_last_voter_force", max_last.str()},
                  {"bound_violations", first_false(upper)},
                  {"inner_bound_holds", count_true(lower)},
                  {"last_voter_unique_least", count_true(isolated)},
                  {"phi_fixes_cylinder", count_true(fixed)}};
    r.details.push_back(entry);
    r.passed = r.passed && mass && support && invariant && count_true(upper) == kRules && count_true(lower) == kRules;
    if (name == "star") r.passed = r.passed && count_true(isolated) == kRules && count_true(fixed) == kRules;
  }
  return r;
}

}  // namespace

Json replay_to_json(const ContradictionReport& c) {
  return Json{{"voters", c.voters},
              {"candidates", c.candidates},
              {"epsilon", c.epsilon.str()},
              {"y_index", c.y_order},
              {"full_support", c.full_support},
              {"permutation_invariant", c.permutation_invariant},
              {"forces", rationals_to_strings(c.forces.forces)},
              {"most_forceful", c.forces.most_forceful},
              {"least_forceful", c.forces.least_forceful},
              {"inner_forces", rationals_to_strings(c.inner_forces)},
              {"last_voter_bound", c.last_voter_bound.str()},
              {"last_voter_bound_holds", c.last_voter_bound_holds},
              {"inner_bounds_hold", c.inner_bounds_hold},
              {"last_voter_unique_least", c.last_voter_unique_least},
              {"phi_fixed", c.phi_fixed},
              {"is_dictatorship", c.dictator.has_value()},
              {"g_is_iia", c.g_is_iia},
              {"non_dictatorial_fixpoint", c.non_dictatorial_fixpoint()}};
}

bool replay_certified(const ContradictionReport& c) {
  return c.full_support && c.permutation_invariant && c.last_voter_unique_least && c.non_dictatorial_fixpoint();
}

namespace {

SuiteResult replay_suite(const RunConfig& cfg) {
  SuiteResult r{"replay", true, true, {}};
  if (cfg.m < 3) {
    r.details = skipped("needs three candidates");
    return r;
  }
  // A Pareto rule for a single voter is a dictatorship, so the replay starts at three.
  const int n = std::max(cfg.n, 3);
  const auto g = majority_with_canonical_tiebreak(n - 1, cfg.m);
  const auto c = replay_contradiction(g, parse_epsilon(cfg), cfg.y_index);
  r.details = replay_to_json(c);
  r.details["g"] = "majority_with_canonical_tiebreak";
  r.passed = replay_certified(c);
  return r;
}

SuiteResult collapse_suite(const RunConfig& cfg) {
  constexpr std::size_t kRules = 1000;
  SuiteResult r{"collapse", false, true, {}};
  const auto mu = build_distribution(cfg);
  const auto rules = seeded_rules(cfg.n, cfg.m, cfg.seed, Salt::collapse, kRules, cfg.jobs);
  const auto tally = check_collapse_conjecture(mu, rules, cfg.jobs);
  Json failures = Json::array();
  for (std::size_t k = 0; k < tally.outcomes.size() && failures.size() < 5; ++k) {
    const auto& o = tally.outcomes[k];
    if (o.collapsed) continue;
    failures.push_back({{"rule_index", k},
                        {"rule", digest_string(o.rule)},
                        {"iterate", digest_string(o.iterate)},
                        {"phi_fixed", o.phi_fixed},
                        {"iterate_is_dictatorship", o.iterate_is_dictatorship}});
  }
  r.details = {{"distribution", cfg.dist},
               {"rules", kRules},
               {"collapsed", tally.passed},
               {"not_collapsed", tally.failed},
               {"failure_examples", failures}};

  if (cfg.m < 3) {
    r.details["cylinder_witnesses"] = skipped("needs three candidates");
    return r;
  }
  const int n = std::max(cfg.n, 3);
  const auto star_mu = lift_star(n, cfg.m, cfg);
  std::vector<VotingRule> inner{majority_with_canonical_tiebreak(n - 1, cfg.m)};
  for (auto& g : seeded_rules(n - 1, cfg.m, cfg.seed, Salt::collapse + 1, 20, cfg.jobs)) inner.push_back(std::move(g));
  std::vector<VotingRule> cylinders;
  for (const auto& g : inner) cylinders.push_back(cylinder_extend(g));
  const auto report = check_collapse_conjecture(star_mu, cylinders, cfg.jobs);
  Json witnesses = Json::array();
  for (std::size_t k = 0; k < report.outcomes.size(); ++k) {
    const auto& o = report.outcomes[k];
    if (!o.phi_fixed || is_dictatorship(o.rule)) continue;
    witnesses.push_back({{"inner", k == 0 ? std::string("majority_with_canonical_tiebreak")
                                          : "random_pareto_" + std::to_string(k - 1)},
                         {"rule", digest_string(o.rule)},
                         {"phi_fixed", o.phi_fixed},
                         {"is_dictatorship", false},
                         {"collapsed", o.collapsed}});
  }
  r.details["cylinder_witnesses"] = {{"distribution", "lift-star"},
                                     {"voters", n},
                                     {"cylinders", cylinders.size()},
                                     {"non_dictatorial_fixpoints", witnesses.size()},
                                     {"witnesses", witnesses}};
  return r;
}

SuiteResult arrow_suite(const RunConfig& cfg) {
  SuiteResult r{"arrow", true, true, {}};
  if (cfg.m < 3) {
    r.details = skipped("needs three candidates");
    return r;
  }
  const auto report = verify_arrow(cfg.n, cfg.m, cfg.jobs);
  std::vector<int> dictators;
  for (const auto& f : report.rules_found) dictators.push_back(f.dictator.value_or(-1));
  r.details = {{"candidates_scanned", report.candidates_scanned},
               {"rules_found", report.rules_found.size()},
               {"dictators", dictators},
               {"all_dictators", report.all_dictators}};
  r.passed = report.all_dictators && report.rules_found.size() == static_cast<std::size_t>(cfg.n);
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"metric", "quotient", "isometry", "equivalence",
                                              "lift",   "replay",   "collapse", "arrow"};
  return names;
}

std::vector<SuiteResult> run_suites(const RunConfig& cfg) {
  std::vector<std::string> selected;
  if (cfg.suite == "all") {
    selected = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), cfg.suite) != suite_names().end()) {
    selected = {cfg.suite};
  } else {
    throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
  }
  std::vector<SuiteResult> out;
  for (const auto& name : selected) {
    if (name == "metric") out.push_back(metric_suite(cfg));
    if (name == "quotient") out.push_back(quotient_suite(cfg));
    if (name == "isometry") out.push_back(isometry_suite(cfg));
    if (name == "equivalence") out.push_back(equivalence_suite(cfg));
    if (name == "lift") out.push_back(lift_suite(cfg));
    if (name == "replay") out.push_back(replay_suite(cfg));
    if (name == "collapse") out.push_back(collapse_suite(cfg));
    if (name == "arrow") out.push_back(arrow_suite(cfg));
  }
  return out;
}

}  // namespace arrowlab::cli

#include "arrowlab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "arrowlab/dynamics.hpp"
#include "arrowlab/quotient.hpp"

namespace arrowlab::cli {

namespace fs = std::filesystem;

namespace {

bool uses_epsilon(const RunConfig& cfg) {
  if (cfg.dist != "uniform") return true;
  if (cfg.command == "replay") return true;
  return cfg.command == "check" && cfg.m >= 3;
}

void validate(const RunConfig& cfg) {
  if (cfg.dist != "uniform" && cfg.dist != "star" && cfg.dist != "lift-star") {
    throw std::invalid_argument("--dist must be uniform, star or lift-star");
  }
  if (cfg.command == "make-fixture" || cfg.command == "quotient") return;
  check_scale(cfg.n, cfg.m);
  if (uses_epsilon(cfg)) {
    if (cfg.m < 3) throw std::invalid_argument("star distributions need at least three candidates");
    const Rational eps = parse_epsilon(cfg);
    if (!admissible_epsilon(eps, cfg.m)) {
      throw std::invalid_argument("epsilon " + eps.str() + " must lie strictly between 0 and 1 - 2/m!");
    }
    if (cfg.y_index < 0 || static_cast<std::size_t>(cfg.y_index) >= factorial(cfg.m)) {
      throw std::invalid_argument("--y-index out of range");
    }
  }
}

Json with_header(const char* kind, const RunConfig& cfg, Json body) {
  Json j = {{"format_version", kFormatVersion}, {"kind", kind}, {"config", config_to_json(cfg)}};
  for (auto& [key, value] : body.items()) j[key] = value;
  return j;
}

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void print_time(std::ostream& out, const Stopwatch& w) {
  out << "wall_time: " << std::fixed << std::setprecision(3) << w.seconds() << " s\n";
}

VotingRule load_rule(const RunConfig& cfg) {
  if (!cfg.rule_file) throw std::invalid_argument("--rule FILE is required");
  return rule_from_json(read_json_file(*cfg.rule_file));
}

int cmd_verify_arrow(const RunConfig& cfg, std::ostream& out) {
  if (cfg.m < 3) throw std::invalid_argument("verify-arrow needs at least three candidates");
  const Stopwatch w;
  const auto report = verify_arrow(cfg.n, cfg.m, cfg.jobs);
  const fs::path dir(cfg.out_dir);
  Json refs = Json::array();
  std::vector<int> dictators;
  for (const auto& f : report.rules_found) {
    const std::string ref = "rules/arrow_rule_" + std::to_string(f.candidate_index) + ".json";
    Json rule = rule_to_json(f.rule);
    rule["config"] = config_to_json(cfg);
    write_json_file(dir / ref, rule);
    refs.push_back(ref);
    dictators.push_back(f.dictator.value_or(-1));
  }
  write_json_file(dir / "arrow_report.json",
                  with_header("arrow_report", cfg,
                              {{"n", report.voters},
                               {"m", report.candidates},
                               {"candidates_scanned", report.candidates_scanned},
                               {"rules_found", refs},
                               {"dictators", dictators},
                               {"all_dictators", report.all_dictators}}));
  out << "scanned " << report.candidates_scanned << " aggregators, found " << report.rules_found.size()
      << " Pareto+IIA rules, all dictators: " << (report.all_dictators ? "yes" : "no") << "\n";
  print_time(out, w);
  return report.all_dictators ? kExitOk : kExitSuiteFailure;
}

int cmd_iterate(RunConfig cfg, std::ostream& out) {
  const auto f = load_rule(cfg);
  if ((cfg.voters_given && cfg.n != f.voters()) || (cfg.candidates_given && cfg.m != f.candidates())) {
    throw std::invalid_argument("rule dimensions do not match --voters/--candidates");
  }
  cfg.n = f.voters();
  cfg.m = f.candidates();
  validate(cfg);
  const auto mu = build_distribution(cfg);
  const Stopwatch w;
  const auto trace = iterate_phi(mu, f, cfg.max_steps);
  const bool fixpoint = trace.terminated_by == Termination::fixpoint;
  const std::size_t records = fixpoint ? trace.steps.size() - 1 : trace.steps.size();

  std::ostringstream lines;
  lines << Json{{"format_version", kFormatVersion}, {"kind", "trace"}, {"config", config_to_json(cfg)}}.dump()
        << "\n";
  for (std::size_t k = 0; k < records; ++k) lines << trace_record(k, trace.steps[k]).dump() << "\n";
  const fs::path dir(cfg.out_dir);
  write_text_file(dir / "trace.jsonl", lines.str());
  write_json_file(dir / "iterate_report.json",
                  with_header("iterate_report", cfg,
                              {{"terminated_by", fixpoint ? "fixpoint" : "step_limit"},
                               {"trace_records", records},
                               {"fixpoint_step", fixpoint ? Json(trace.fixpoint_step()) : Json(nullptr)},
                               {"fixpoint_is_dictatorship", trace.fixpoint_is_dictatorship},
                               {"final_rule", digest_string(trace.steps.back().rule)}}));
  out << (fixpoint ? "fixpoint after " + std::to_string(trace.fixpoint_step()) + " step(s)"
                   : "step limit reached after " + std::to_string(trace.steps.size() - 1) + " step(s)")
      << ", dictatorship: " << (trace.fixpoint_is_dictatorship ? "yes" : "no") << "\n";
  print_time(out, w);
  return fixpoint ? kExitOk : kExitStepLimit;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const Stopwatch w;
  const auto results = run_suites(cfg);
  Json suites = Json::array();
  bool all = true;
  for (const auto& r : results) {
    suites.push_back({{"name", r.name}, {"asserted", r.asserted}, {"passed", r.passed}, {"details", r.details}});
    if (r.asserted) all = all && r.passed;
    out << r.name << ": " << (!r.asserted ? "REPORT" : r.passed ? "PASS" : "FAIL") << "\n";
  }
  write_json_file(fs::path(cfg.out_dir) / "check_report.json",
                  with_header("check_report", cfg, {{"suites", suites}, {"asserted_passed", all}}));
  print_time(out, w);
  return all ? kExitOk : kExitSuiteFailure;
}

int cmd_replay(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 2) throw std::invalid_argument("replay needs at least two voters");
  const VotingRule g = cfg.rule_file ? load_rule(cfg) : majority_with_canonical_tiebreak(cfg.n - 1, cfg.m);
  if (g.voters() != cfg.n - 1 || g.candidates() != cfg.m) {
    throw std::invalid_argument("--rule must have voters-1 voters and the configured candidates");
  }
  const Stopwatch w;
  const auto c = replay_contradiction(g, parse_epsilon(cfg), cfg.y_index);
  Json body = replay_to_json(c);
  body["g"] = cfg.rule_file ? digest_string(g) : "majority_with_canonical_tiebreak";
  body["certified"] = replay_certified(c);
  write_json_file(fs::path(cfg.out_dir) / "replay_report.json", with_header("replay_report", cfg, body));
  out << "last voter uniquely least forceful: " << (c.last_voter_unique_least ? "yes" : "no")
      << ", phi fixes the cylinder: " << (c.phi_fixed ? "yes" : "no")
      << ", dictatorship: " << (c.dictator ? "yes" : "no") << "\n";
  print_time(out, w);
  return replay_certified(c) ? kExitOk : kExitSuiteFailure;
}

int cmd_make_rule(const RunConfig& cfg, std::ostream& out) {
  VotingRule f = [&] {
    if (cfg.kind == "dictator") return dictator(cfg.n, cfg.m, cfg.voter);
    if (cfg.kind == "constant") return constant_rule(cfg.n, cfg.m, cfg.y_index);
    if (cfg.kind == "majority") return majority_with_canonical_tiebreak(cfg.n, cfg.m);
    if (cfg.kind == "borda") return borda_rule(cfg.n, cfg.m);
    if (cfg.kind == "random-pareto") return random_pareto_rule(cfg.n, cfg.m, cfg.seed);
    if (cfg.kind == "cylinder-majority") {
      if (cfg.n < 2) throw std::invalid_argument("cylinder-majority needs at least two voters");
      return cylinder_extend(majority_with_canonical_tiebreak(cfg.n - 1, cfg.m));
    }
    throw std::invalid_argument("unknown rule kind '" + cfg.kind + "'");
  }();
  Json j = rule_to_json(f);
  j["config"] = config_to_json(cfg);
  const fs::path path = fs::path(cfg.out_dir) / "rule.json";
  write_json_file(path, j);
  out << path.string() << " " << digest_string(f) << "\n";
  return kExitOk;
}

int cmd_make_dist(const RunConfig& cfg, std::ostream& out) {
  Json j = distribution_to_json(build_distribution(cfg));
  j["config"] = config_to_json(cfg);
  const fs::path path = fs::path(cfg.out_dir) / "distribution.json";
  write_json_file(path, j);
  out << path.string() << "\n";
  return kExitOk;
}

int cmd_make_fixture(const RunConfig& cfg, std::ostream& out) {
  Json j = fixture_to_json(random_orbit_fixture(cfg.seed));
  j["config"] = config_to_json(cfg);
  const fs::path path = fs::path(cfg.out_dir) / "fixture.json";
  write_json_file(path, j);
  out << path.string() << "\n";
  return kExitOk;
}

int cmd_quotient(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.fixture_file) throw std::invalid_argument("--fixture FILE is required");
  const auto fx = fixture_from_json(read_json_file(*cfg.fixture_file));
  const auto axioms = check_metric_axioms(fx.space);
  const auto chain = quotient_chain_matrix(fx.space, fx.partition);
  const std::size_t n = fx.space.size();
  Json chain_rows = Json::array();
  Json orbit_rows = Json::array();
  bool agree = true;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::string> c;
    std::vector<std::string> o;
    for (std::size_t y = 0; y < n; ++y) {
      const Rational od = quotient_distance_orbit(fx.space, fx.partition, x, y);
      agree = agree && od == chain[x][y];
      c.push_back(chain[x][y].str());
      o.push_back(od.str());
    }
    chain_rows.push_back(c);
    orbit_rows.push_back(o);
  }
  const bool orbits = !fx.generators.empty() && verify_isometry_orbits(fx.space, fx.partition, fx.generators);
  write_json_file(fs::path(cfg.out_dir) / "quotient_report.json",
                  with_header("quotient_report", cfg,
                              {{"points", n},
                               {"metric", axioms.ok},
                               {"isometry_orbits", orbits},
                               {"chain", chain_rows},
                               {"orbit", orbit_rows},
                               {"chain_equals_orbit", agree}}));
  out << "chain equals orbit: " << (agree ? "yes" : "no") << ", isometry orbits: " << (orbits ? "yes" : "no")
      << "\n";
  return kExitOk;
}

void add_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--voters", cfg.n, "number of voters n");
  sub->add_option("--candidates", cfg.m, "number of candidates m");
  sub->add_option("--dist", cfg.dist, "uniform | star | lift-star");
  sub->add_option("--epsilon", cfg.epsilon, "star weight parameter as p/q");
  sub->add_option("--y-index", cfg.y_index, "order index of the star centre");
  sub->add_option("--rule", cfg.rule_file, "rule file");
  sub->add_option("--seed", cfg.seed, "seed");
  sub->add_option("--max-steps", cfg.max_steps, "phi iteration limit");
  sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out_dir, "output directory");
  sub->add_option("--suite", cfg.suite, "check suite name or all");
  sub->add_option("--kind", cfg.kind, "make-rule: dictator | constant | majority | borda | random-pareto | cylinder-majority");
  sub->add_option("--voter", cfg.voter, "make-rule: dictator voter");
  sub->add_option("--fixture", cfg.fixture_file, "quotient: fixture file");
}

}  // namespace

Rational parse_epsilon(const RunConfig& cfg) { return Rational::parse(cfg.epsilon); }

Distribution build_distribution(const RunConfig& cfg) {
  if (cfg.dist == "uniform") return uniform_distribution(cfg.n, cfg.m);
  if (cfg.dist == "star") return star_distribution(cfg.n, cfg.m, parse_epsilon(cfg), cfg.y_index);
  if (cfg.dist == "lift-star") {
    if (cfg.n < 2) throw std::invalid_argument("lift-star needs at least two voters");
    return lift_distribution(star_distribution(cfg.n - 1, cfg.m, parse_epsilon(cfg), cfg.y_index), cfg.n - 1);
  }
  throw std::invalid_argument("unknown distribution '" + cfg.dist + "'");
}

Json config_to_json(const RunConfig& cfg) {
  Json dist = {{"kind", cfg.dist}};
  if (cfg.dist != "uniform" || uses_epsilon(cfg)) {
    dist["epsilon"] = Rational::parse(cfg.epsilon).str();
    dist["y_index"] = cfg.y_index;
  }
  return Json{{"command", cfg.command},
              {"n", cfg.n},
              {"m", cfg.m},
              {"dist", dist},
              {"seed", cfg.seed},
              {"max_steps", cfg.max_steps},
              {"rule", cfg.rule_file ? Json(*cfg.rule_file) : Json(nullptr)},
              {"suite", cfg.suite},
              {"kind", cfg.kind},
              {"voter", cfg.voter},
              {"fixture", cfg.fixture_file ? Json(*cfg.fixture_file) : Json(nullptr)}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Verification lab for the fixpoint proof of Arrow's theorem", "arrowlab"};
  app.require_subcommand(1);
  for (const char* name :
       {"verify-arrow", "iterate", "check", "replay", "make-rule", "make-dist", "make-fixture", "quotient"}) {
    add_options(app.add_subcommand(name), cfg);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitPrecondition;
  }
  const CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  cfg.voters_given = sub->count("--voters") > 0;
  cfg.candidates_given = sub->count("--candidates") > 0;

  try {
    if (cfg.command != "iterate") validate(cfg);
    if (cfg.command == "verify-arrow") return cmd_verify_arrow(cfg, out);
    if (cfg.command == "iterate") return cmd_iterate(cfg, out);
    if (cfg.command == "check") return cmd_check(cfg, out);
    if (cfg.command == "replay") return cmd_replay(cfg, out);
    if (cfg.command == "make-rule") return cmd_make_rule(cfg, out);
    if (cfg.command == "make-dist") return cmd_make_dist(cfg, out);
    if (cfg.command == "make-fixture") return cmd_make_fixture(cfg, out);
    return cmd_quotient(cfg, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"arrowlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace arrowlab::cli

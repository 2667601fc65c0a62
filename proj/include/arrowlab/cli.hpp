#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arrowlab/arrowcheck.hpp"
#include "arrowlab/io.hpp"
#include "arrowlab/measures.hpp"

namespace arrowlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitStepLimit = 3;
inline constexpr int kExitSuiteFailure = 4;

struct RunConfig {
  std::string command;
  int n = 2;
  int m = 3;
  std::string dist = "uniform";  // uniform | star | lift-star
  std::string epsilon = "1/2";
  int y_index = 0;
  std::optional<std::string> rule_file;
  std::uint64_t seed = 0;
  std::size_t max_steps = 100;
  int jobs = 1;
  std::string out_dir = "out";
  std::string suite = "all";
  std::string kind = "dictator";  // make-rule
  int voter = 0;                  // make-rule
  std::optional<std::string> fixture_file;
  bool voters_given = false;      // --voters / --candidates passed explicitly
  bool candidates_given = false;
};

/// Resolved configuration as written into every output file. Worker count
/// and output directory are left out so reports do not depend on them.
Json config_to_json(const RunConfig& cfg);

Rational parse_epsilon(const RunConfig& cfg);

/// uniform(n), star(n) or lift(star(n-1), n-1), with epsilon and y from cfg.
Distribution build_distribution(const RunConfig& cfg);

struct SuiteResult {
  std::string name;
  bool asserted = true;
  bool passed = true;
  Json details;
};

const std::vector<std::string>& suite_names();

Json replay_to_json(const ContradictionReport& report);
/// Full support, invariance, isolated last voter and a non-dictatorial fixpoint.
bool replay_certified(const ContradictionReport& report);

/// Runs one suite or, for "all", every suite in suite_names() order.
std::vector<SuiteResult> run_suites(const RunConfig& cfg);

/// Full command-line entry point. Diagnostics go to `err`, progress and
/// timings to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arrowlab::cli

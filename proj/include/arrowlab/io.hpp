#pragma once

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrowlab/dynamics.hpp"
#include "arrowlab/measures.hpp"
#include "arrowlab/quotient.hpp"
#include "arrowlab/rules.hpp"

namespace arrowlab {

inline constexpr int kFormatVersion = 1;

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

/// {"format_version", "kind": "voting_rule", "n", "m", "table"}
Json rule_to_json(const VotingRule& f);
VotingRule rule_from_json(const Json& j);

/// {"format_version", "kind": "distribution", "n", "m", "weights": ["p/q", ...]}
Json distribution_to_json(const Distribution& mu);
Distribution distribution_from_json(const Json& j);

/// {"format_version", "kind": "metric_fixture", "points", "dist": [upper
/// triangle "p/q"], "classes": [ids], "generators": [[...], ...]}
Json fixture_to_json(const MetricFixture& fixture);
MetricFixture fixture_from_json(const Json& j);

/// "fnv1a64:" followed by 16 lowercase hex digits of table_digest.
std::string digest_string(const VotingRule& f);

std::vector<std::string> rationals_to_strings(const std::vector<Rational>& values);

/// One line-delimited JSON record per trace step:
/// {"step", "rule_table_digest", "forces", "most_forceful", "least_forceful"}
Json trace_record(std::size_t step, const TraceStep& s);

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace arrowlab

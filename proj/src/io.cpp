#include "arrowlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace arrowlab {

namespace {

void expect_kind(const Json& j, const char* kind) {
  if (!j.is_object()) throw FormatError(std::string("expected a JSON object for ") + kind);
  if (!j.contains("format_version") || j.at("format_version") != kFormatVersion) {
    throw FormatError(std::string(kind) + ": unsupported or missing format_version");
  }
  if (j.contains("kind") && j.at("kind") != kind) {
    throw FormatError("expected kind '" + std::string(kind) + "', found " + j.at("kind").dump());
  }
}

template <class T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw FormatError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("field '") + name + "': " + e.what());
  }
}

Rational parse_rational(const Json& value) {
  if (!value.is_string()) throw FormatError("rational values must be strings \"p/q\"");
  try {
    return Rational::parse(value.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Json rule_to_json(const VotingRule& f) {
  return Json{{"format_version", kFormatVersion},
              {"kind", "voting_rule"},
              {"n", f.voters()},
              {"m", f.candidates()},
              {"table", std::vector<int>(f.table().begin(), f.table().end())}};
}

VotingRule rule_from_json(const Json& j) {
  expect_kind(j, "voting_rule");
  const auto n = field<int>(j, "n");
  const auto m = field<int>(j, "m");
  const auto entries = field<std::vector<long>>(j, "table");
  std::vector<std::uint16_t> table;
  table.reserve(entries.size());
  for (long e : entries) {
    if (e < 0 || e > 0xFFFF) throw FormatError("rule table entry out of range");
    table.push_back(static_cast<std::uint16_t>(e));
  }
  try {
    return VotingRule(n, m, std::move(table));
  } catch (const ScaleError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json distribution_to_json(const Distribution& mu) {
  std::vector<Rational> weights(mu.weights().begin(), mu.weights().end());
  return Json{{"format_version", kFormatVersion},
              {"kind", "distribution"},
              {"n", mu.voters()},
              {"m", mu.candidates()},
              {"weights", rationals_to_strings(weights)}};
}

Distribution distribution_from_json(const Json& j) {
  expect_kind(j, "distribution");
  const auto n = field<int>(j, "n");
  const auto m = field<int>(j, "m");
  if (!j.contains("weights") || !j.at("weights").is_array()) throw FormatError("missing weights array");
  std::vector<Rational> weights;
  for (const auto& w : j.at("weights")) weights.push_back(parse_rational(w));
  try {
    return Distribution(n, m, std::move(weights));
  } catch (const ScaleError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

Json fixture_to_json(const MetricFixture& fixture) {
  Json generators = Json::array();
  for (const auto& g : fixture.generators) generators.push_back(g);
  return Json{{"format_version", kFormatVersion},
              {"kind", "metric_fixture"},
              {"points", fixture.space.size()},
              {"dist", rationals_to_strings(fixture.space.upper_triangle())},
              {"classes", std::vector<int>(fixture.partition.ids().begin(), fixture.partition.ids().end())},
              {"generators", generators}};
}

MetricFixture fixture_from_json(const Json& j) {
  expect_kind(j, "metric_fixture");
  const auto points = field<std::size_t>(j, "points");
  if (points == 0) throw FormatError("a fixture needs at least one point");
  if (!j.contains("dist") || !j.at("dist").is_array()) throw FormatError("missing dist array");
  std::vector<Rational> upper;
  for (const auto& d : j.at("dist")) upper.push_back(parse_rational(d));
  if (upper.size() != points * (points - 1) / 2) throw FormatError("dist must hold points*(points-1)/2 entries");
  auto classes = field<std::vector<int>>(j, "classes");
  if (classes.size() != points) throw FormatError("classes must hold one id per point");
  std::vector<std::vector<std::size_t>> generators;
  if (j.contains("generators")) generators = field<std::vector<std::vector<std::size_t>>>(j, "generators");
  return MetricFixture{FiniteMetricSpace::from_upper_triangle(points, upper),
                       EquivalencePartition(std::move(classes)), std::move(generators)};
}

std::string digest_string(const VotingRule& f) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(table_digest(f)));
  return std::string("fnv1a64:") + buf;
}

std::vector<std::string> rationals_to_strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

Json trace_record(std::size_t step, const TraceStep& s) {
  return Json{{"step", step},
              {"rule_table_digest", digest_string(s.rule)},
              {"forces", rationals_to_strings(s.forces.forces)},
              {"most_forceful", s.forces.most_forceful},
              {"least_forceful", s.forces.least_forceful}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace arrowlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "plaut/expand.hpp"

namespace plaut {

/// A set of points given as a grid, a seeded random sample or a list.
struct PointSetSpec {
  enum class Kind { Grid, Random, List };
  Kind kind = Kind::Grid;
  /// Grid: one inclusive range per coordinate.
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  std::size_t count = 0;
  std::vector<std::vector<std::string>> list;
};

/// Key/value experiment description, one `key = value` per line, `#`
/// comments. Keys: field, family, params, map (repeatable), B, A,
/// gp_degree, gp_budget, seed, workers, memory_budget, eps, eps_max_word,
/// eps_max_deg, eps_bases.
///
///   B = grid 0..63 | random 64 | list 1; 2; 3
///   A = grid 0..63 x 0..63 | random 4096 | list 1,2; 3,4
struct ExperimentConfig {
  Field field = Field::prime(10007);
  std::optional<std::string> family;
  std::vector<std::string> params;
  std::vector<std::string> maps;
  std::optional<PointSetSpec> B;
  PointSetSpec A;
  std::uint32_t gp_degree = 1;
  std::size_t gp_budget = 2000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t memory_budget = std::size_t{1} << 24;
  bool eps = true;
  EpsBounds eps_bounds;
};

/// Throws ConfigError naming the offending key.
ExperimentConfig parse_config(std::string_view text);

struct ExpansionReport {
  std::string field;
  std::uint64_t seed = 0;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  std::size_t f_size = 0;
  std::vector<std::pair<std::size_t, std::string>> rejected;
  std::uint64_t image_size = 0;
  double exponent = 0;
  std::vector<GpDegree> gp;
  std::optional<EpsNilpotent> eps;
  std::int64_t millis = 0;
};

/// Materializes the point sets of a config (deterministic in the seed).
std::vector<Point> build_A(const ExperimentConfig& cfg);
std::vector<std::vector<Scalar>> build_B(const ExperimentConfig& cfg);

ExpansionReport run_experiment(const ExperimentConfig& cfg);

/// Versioned structured report; wall-clock time is only included on request
/// so that seeded runs are byte-identical.
nlohmann::json to_json(const ExpansionReport& report, bool timing = false);
std::string csv_header();
std::string csv_row(const ExpansionReport& report);

}  // namespace plaut

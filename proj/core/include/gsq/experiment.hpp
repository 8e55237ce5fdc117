#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsq/estimator.hpp"
#include "gsq/reference.hpp"

namespace gsq {

enum class ExperimentType { table, error_curve, x_sweep };
enum class OutputFormat { csv, json };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One experiment: a grid of (generator, N, n_levels, x) estimation runs on a
// fixed model. Loaded from a JSON config (schema gsq-config/1, documented in
// the README); every field needed to reproduce a QMC row bit-identically is
// echoed into the output.
struct ExperimentConfig {
  static constexpr const char* kSchema = "gsq-config/1";

  ExperimentType experiment = ExperimentType::table;
  ModelParams model;
  std::vector<int> n_levels;
  std::vector<std::int64_t> points;
  std::vector<PointSetKind> generators;
  std::vector<double> x_values;  // x_sweep only; defaults to {model.x}
  std::uint64_t mc_seed = 1;
  std::optional<std::uint64_t> scramble_seed;
  std::uint64_t skip = 0;
  std::string output_path;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
  int threads = 0;

  void validate() const;  // throws ConfigError
};

ExperimentConfig parse_config_json(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

struct ResultRow {
  std::string generator;
  std::int64_t points = 0;
  int n_levels = 0;
  double x = 0.0;
  std::string lambda_desc;  // inter-arrival rate (exponential) or shape:rate
  std::string mu_desc;
  double delta = 0.0;
  std::string penalty;
  double estimate = 0.0;
  std::optional<double> std_error;
  std::optional<std::pair<double, double>> ci95;
  std::optional<double> reference;
  std::optional<double> abs_error;
  double seconds = 0.0;
  std::vector<LevelEstimate> per_level;  // JSON output only
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
};

// Per-level point-set spec used by run_experiment for one row; exposed so the
// rows can be reproduced programmatically.
PointSetSpec level_spec(const ExperimentConfig& config, PointSetKind kind, int level,
                        std::int64_t count);

ExperimentResult run_experiment(const ExperimentConfig& config);

void write_csv(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result);
void write_json(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace gsq

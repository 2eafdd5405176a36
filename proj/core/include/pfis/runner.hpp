#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfis/config.hpp"
#include "pfis/defuzz.hpp"
#include "pfis/inference.hpp"
#include "pfis/possibility.hpp"

namespace pfis {

/// A fuzzified antecedent clause with its lexical rendering, kept for
/// transparency of the inference chain.
struct ClauseReading {
  std::string rule_id;
  Clause clause;
  Degree degree;
  std::string text;  // e.g. "Substantially calm"
};

/// Verification against an observed outcome: the outcome value is mapped to
/// the best-matching output category and scored against the forecast's
/// (normalized) possibility for that category. Info gain is only present
/// when a baseline support was supplied and is tagged experimental when
/// serialized.
struct Verification {
  double observed_value = 0.0;
  std::string observed_category;
  Degree support;
  double ignorance_bits = 0.0;
  std::optional<double> info_gain_bits;
};

struct RunRecord {
  std::size_t row = 0;
  std::optional<std::string> time_label;
  Observation observation;
  std::vector<Activation> activations;
  PossibilityDistribution raw;
  PossibilityReport report;
  std::optional<ScenarioSet> scenarios;  // absent when pi is identically zero
  std::vector<ClauseReading> readings;
  std::vector<std::pair<std::string, std::string>> category_verbalizations;
  std::optional<Verification> verification;
};

/// One observation through the whole pipeline: fuzzify, activate, aggregate,
/// unsure, normalize, necessity, defuzzify, verbalize. An all-zero
/// aggregation short-circuits to unsure = 1 with no scenarios.
RunRecord run_single(const SystemConfig& config, const Observation& obs, std::size_t row = 0,
                     std::optional<std::string> time_label = std::nullopt);

/// Attaches verification scoring for an observed outcome value.
void verify_record(RunRecord& record, const SystemConfig& config, double observed_value,
                   std::optional<double> baseline_support);

/// One JSON object (single line, no trailing newline). Numbers use the
/// shortest representation that parses back to the identical double.
std::string record_to_jsonl(const RunRecord& record);
/// Inverse of record_to_jsonl for every serialized field. Category curves
/// are derived data and come back empty.
RunRecord record_from_jsonl(const std::string& line);

struct BatchOptions {
  int workers = 1;
  std::optional<double> baseline_support;
};

struct BatchSummary {
  std::size_t rows = 0;
  std::size_t errors = 0;
  double mean_unsure = 0.0;
  std::optional<double> mean_ignorance_bits;
  std::optional<double> mean_info_gain_bits;
};

/// Streams a CSV of observations (header row required) through run_single
/// and writes one JSON line per row. Row order and output bytes are
/// identical for any worker count. Per-row failures become in-stream error
/// records; header problems abort with DataError.
BatchSummary run_batch(const SystemConfig& config, const std::string& csv_path,
                       const std::string& out_path, const BatchOptions& options = {});

std::string summary_to_json(const BatchSummary& summary);

/// Writes one CSV of (x, membership per category) per variable into out_dir,
/// optionally restricted to a single variable. With an observation, also
/// writes aggregated.csv holding the clipped consequent of every rule and
/// the aggregated curve (plus its normalization when it exists).
void export_curves(const SystemConfig& config, const std::optional<Observation>& obs,
                   const std::string& out_dir,
                   const std::optional<std::string>& variable_filter = std::nullopt);

}  // namespace pfis

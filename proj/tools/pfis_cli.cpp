// Command-line front end: validate configs, evaluate single observations,
// batch-process CSV time series, and export curve samples for plotting.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pfis/config.hpp"
#include "pfis/runner.hpp"

namespace {

using namespace pfis;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

struct Overrides {
  std::optional<int> grid_points;
  std::optional<std::string> percentiles;
  bool no_unsure_necessity = false;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--grid-points", ov.grid_points, "Override the universe grid resolution (>= 2)");
  cmd->add_option("--percentiles", ov.percentiles,
                  "Override defuzzification fractions, comma separated (e.g. 0.1,0.5,0.9)");
  cmd->add_flag("--no-unsure-necessity", ov.no_unsure_necessity,
                "Exclude the unsure residual from necessity computation");
}

std::vector<double> parse_fraction_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || !(value > 0.0 && value < 1.0)) {
      throw ConfigError("--percentiles: '" + tok + "' is not a fraction in (0, 1)");
    }
    if (!out.empty() && value <= out.back()) {
      throw ConfigError("--percentiles must be strictly increasing");
    }
    out.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("--percentiles: empty list");
  return out;
}

SystemConfig load_with_overrides(const std::string& path, const Overrides& ov) {
  SystemConfig config = load_config(path);
  if (ov.grid_points.has_value()) {
    if (*ov.grid_points < 2) throw ConfigError("--grid-points must be >= 2");
    config.grid_points = *ov.grid_points;
    std::vector<LinguisticVariable> rebuilt;
    rebuilt.reserve(config.variables.size());
    for (const LinguisticVariable& v : config.variables) {
      rebuilt.emplace_back(v.name(), v.universe_min(), v.universe_max(), *ov.grid_points,
                           v.categories());
    }
    config.variables = std::move(rebuilt);
  }
  if (ov.percentiles.has_value()) {
    config.percentiles = parse_fraction_list(*ov.percentiles);
  }
  if (ov.no_unsure_necessity) {
    config.unsure_in_necessity = false;
  }
  return config;
}

Observation parse_set_pairs(const std::vector<std::string>& pairs, const SystemConfig& config) {
  Observation obs;
  for (const std::string& pair : pairs) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects var=value, got '" + pair + "'");
    }
    const std::string name = pair.substr(0, eq);
    if (find_variable(config.variables, name) == nullptr) {
      throw ConfigError("--set " + pair + ": no variable named '" + name + "'");
    }
    const std::string value_text = pair.substr(eq + 1);
    double value = 0.0;
    const char* first = value_text.data();
    const char* last = value_text.data() + value_text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
      throw ConfigError("--set " + pair + ": cannot parse '" + value_text + "' as a number");
    }
    obs[name] = value;
  }
  return obs;
}

int cmd_validate(const std::string& config_path) {
  try {
    const SystemConfig config = load_config(config_path);
    const ValidationReport report = validate_config(config);
    std::cout << "OK: " << config.variables.size() << " variables, "
              << config.ruleset.rules.size() << " rules\n";
    for (const std::string& note : report.infos()) {
      std::cout << "note: " << note << "\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    for (const ConfigViolation& v : e.violations()) {
      std::cerr << "  " << (v.pointer.empty() ? "/" : v.pointer) << ": " << v.message << "\n";
    }
    return kExitUsage;
  }
}

int cmd_eval(const std::string& config_path, const Overrides& ov,
             const std::vector<std::string>& set_pairs, const std::string& output_path) {
  const SystemConfig config = load_with_overrides(config_path, ov);
  const Observation obs = parse_set_pairs(set_pairs, config);
  const RunRecord rec = run_single(config, obs);
  const std::string line = record_to_jsonl(rec);
  if (output_path.empty()) {
    std::cout << line << "\n";
  } else {
    std::ofstream out(output_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open output file '" + output_path + "'");
    out << line << "\n";
    if (!out) throw IoError("failed writing '" + output_path + "'");
  }
  return kExitOk;
}

int cmd_batch(const std::string& config_path, const Overrides& ov, const std::string& input_path,
              const std::string& output_path, int workers,
              std::optional<double> baseline_support) {
  const SystemConfig config = load_with_overrides(config_path, ov);
  BatchOptions options;
  options.workers = workers;
  if (baseline_support.has_value()) {
    if (!(*baseline_support >= 0.0 && *baseline_support <= 1.0)) {
      throw ConfigError("--baseline-support must lie in [0, 1]");
    }
    options.baseline_support = baseline_support;
  }
  const BatchSummary summary = run_batch(config, input_path, output_path, options);
  std::cout << summary_to_json(summary) << "\n";
  return kExitOk;
}

int cmd_curves(const std::string& config_path, const Overrides& ov,
               const std::vector<std::string>& set_pairs, const std::string& output_dir,
               const std::string& variable_filter) {
  const SystemConfig config = load_with_overrides(config_path, ov);
  std::optional<Observation> obs;
  if (!set_pairs.empty()) obs = parse_set_pairs(set_pairs, config);
  std::optional<std::string> filter;
  if (!variable_filter.empty()) filter = variable_filter;
  export_curves(config, obs, output_dir, filter);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Possibilistic fuzzy-inference forecasting"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  std::vector<std::string> set_pairs;
  std::string output;
  std::string input;
  std::string variable_filter;
  int workers = 1;
  std::optional<double> baseline_support;

  CLI::App* validate = app.add_subcommand("validate", "Check a config file and report findings");
  validate->add_option("config", config_path, "Config file (JSON)")->required();

  CLI::App* eval = app.add_subcommand("eval", "Run one observation through the system");
  eval->add_option("config", config_path, "Config file (JSON)")->required();
  eval->add_option("--set", set_pairs, "Observation value as var=value (repeatable)")
      ->required()
      ->take_all();
  eval->add_option("--output", output, "Write the record here instead of stdout");
  add_override_flags(eval, ov);

  CLI::App* batch = app.add_subcommand("batch", "Process a CSV of observations into JSON lines");
  batch->add_option("config", config_path, "Config file (JSON)")->required();
  batch->add_option("--input", input, "Observations CSV (header row required)")->required();
  batch->add_option("--output", output, "Output JSON-lines path")->required();
  batch->add_option("--workers", workers, "Worker threads (output is identical for any count)")
      ->check(CLI::Range(1, 64));
  batch->add_option("--baseline-support", baseline_support,
                    "Baseline support in [0,1] for the experimental information-gain score");
  add_override_flags(batch, ov);

  CLI::App* curves = app.add_subcommand("curves", "Export membership and activation curves as CSV");
  curves->add_option("config", config_path, "Config file (JSON)")->required();
  curves->add_option("--output", output, "Output directory")->required();
  curves->add_option("--set", set_pairs,
                     "Optional observation (var=value, repeatable) to export clipped and "
                     "aggregated curves");
  curves->add_option("--variable", variable_filter, "Export only this variable's curves");
  add_override_flags(curves, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(config_path);
    if (eval->parsed()) return cmd_eval(config_path, ov, set_pairs, output);
    if (batch->parsed()) return cmd_batch(config_path, ov, input, output, workers, baseline_support);
    if (curves->parsed()) return cmd_curves(config_path, ov, set_pairs, output, variable_filter);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const ConfigViolation& v : e.violations()) {
      std::cerr << "  " << (v.pointer.empty() ? "/" : v.pointer) << ": " << v.message << "\n";
    }
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {  // DataError, DomainError
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

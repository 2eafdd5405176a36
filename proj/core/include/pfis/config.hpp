#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pfis/errors.hpp"
#include "pfis/rule_parser.hpp"
#include "pfis/rules.hpp"
#include "pfis/variable.hpp"

namespace pfis {

/// Fully resolved system description: variables, parsed ruleset, run options.
struct SystemConfig {
  std::vector<LinguisticVariable> variables;
  RuleSet ruleset;
  std::vector<std::string> rule_lines;  // original text, comments included
  std::string output_variable;
  int grid_points = 201;
  std::vector<double> percentiles{0.1, 0.5, 0.9};
  bool unsure_in_necessity = true;

  const LinguisticVariable& variable(std::string_view name) const;
  const LinguisticVariable& output() const { return variable(output_variable); }
};

/// Parses and validates a config document (JSON, schema version 1). Collects
/// every violation before failing; the thrown ConfigError lists all of them
/// with JSON-pointer locations.
SystemConfig parse_config(const std::string& json_text);

/// parse_config over a file. Throws IoError when unreadable.
SystemConfig load_config(const std::string& path);

/// Informational cross-checks on a loaded config (ruleset findings such as
/// output categories never produced, overlapping output curves).
ValidationReport validate_config(const SystemConfig& config);

}  // namespace pfis

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfis/degree.hpp"
#include "pfis/rules.hpp"
#include "pfis/variable.hpp"

namespace pfis {

/// Observed crisp values keyed by variable name. Must cover every variable
/// referenced by the ruleset antecedents, fired or not.
using Observation = std::map<std::string, double>;

struct Activation {
  std::string rule_id;
  Degree level;
  std::string consequent_category;
};

/// Sampled possibility curve over the output universe, plus per-category
/// possibilities (sup-min of category curve against pi). category_curves
/// holds the sampled output membership functions in declaration order; it is
/// carried so normalization can recompute per-category values.
struct PossibilityDistribution {
  std::vector<double> grid;
  std::vector<Degree> pi;
  std::vector<std::pair<std::string, Degree>> per_category;
  bool normalized = false;
  std::vector<std::pair<std::string, std::vector<Degree>>> category_curves;

  Degree max_pi() const;
  std::optional<Degree> category_possibility(std::string_view category) const;
};

/// Degree of the clause at the observed (clamped) value; negation complements.
Degree fuzzify(const Observation& obs, const Clause& clause,
               const std::vector<LinguisticVariable>& variables);

/// Combines clause degrees with the rule's connective (AND = min, OR = max).
/// Errors from fuzzify are rethrown with the rule id attached.
Activation activate(const Rule& rule, const Observation& obs,
                    const std::vector<LinguisticVariable>& variables);

/// Mamdani aggregation: each activation clips its consequent curve at the
/// activation level (min), and the clipped curves are united pointwise (max).
PossibilityDistribution aggregate(const std::vector<Activation>& activations,
                                  const LinguisticVariable& output_variable);

}  // namespace pfis

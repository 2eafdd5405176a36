#pragma once

#include <string>
#include <vector>

#include "pfis/variable.hpp"

namespace pfis {

/// One "<variable> IS [NOT] <category>" condition.
struct Clause {
  std::string variable;
  std::string category;
  bool negated = false;
};

enum class Connective { And, Or };

/// A single implication. All antecedent clauses share one connective; the
/// consequent is never negated.
struct Rule {
  std::string id;
  std::vector<Clause> antecedent;
  Connective connective = Connective::And;
  Clause consequent;
};

struct RuleSet {
  std::vector<Rule> rules;
  std::string output_variable;
};

/// Canonical textual form: uppercase keywords, single spaces, identifiers
/// verbatim. Parsing the rendering reproduces the rule.
std::string render(const Clause& clause);
std::string render(const Rule& rule);
std::string render(const RuleSet& ruleset);  // one rule per line

enum class Severity { Error, Info };

struct Finding {
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const;  // true when no Error-severity finding is present
  std::vector<std::string> errors() const;
  std::vector<std::string> infos() const;
};

/// Cross-checks a ruleset against the declared variables: unresolved
/// variable/category references, duplicate ids and consequents outside the
/// output variable are errors; output categories never produced and
/// overlapping output category curves are informational.
ValidationReport validate_ruleset(const RuleSet& ruleset,
                                  const std::vector<LinguisticVariable>& variables);

}  // namespace pfis

#include "pfis/rules.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pfis {

std::string render(const Clause& clause) {
  std::string out = clause.variable + " IS ";
  if (clause.negated) out += "NOT ";
  out += clause.category;
  return out;
}

std::string render(const Rule& rule) {
  std::string out = "IF ";
  const char* conn = rule.connective == Connective::And ? " AND " : " OR ";
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
    if (i > 0) out += conn;
    out += render(rule.antecedent[i]);
  }
  out += " THEN " + render(rule.consequent);
  return out;
}

std::string render(const RuleSet& ruleset) {
  std::string out;
  for (const Rule& r : ruleset.rules) {
    out += render(r);
    out += '\n';
  }
  return out;
}

bool ValidationReport::ok() const {
  return std::none_of(findings.begin(), findings.end(),
                      [](const Finding& f) { return f.severity == Severity::Error; });
}

std::vector<std::string> ValidationReport::errors() const {
  std::vector<std::string> out;
  for (const auto& f : findings) {
    if (f.severity == Severity::Error) out.push_back(f.message);
  }
  return out;
}

std::vector<std::string> ValidationReport::infos() const {
  std::vector<std::string> out;
  for (const auto& f : findings) {
    if (f.severity == Severity::Info) out.push_back(f.message);
  }
  return out;
}

ValidationReport validate_ruleset(const RuleSet& ruleset,
                                  const std::vector<LinguisticVariable>& variables) {
  ValidationReport report;
  auto error = [&](std::string msg) {
    report.findings.push_back({Severity::Error, std::move(msg)});
  };
  auto info = [&](std::string msg) {
    report.findings.push_back({Severity::Info, std::move(msg)});
  };

  const LinguisticVariable* output = find_variable(variables, ruleset.output_variable);
  if (output == nullptr) {
    error("output variable '" + ruleset.output_variable + "' is not declared");
  }

  if (ruleset.rules.empty()) error("ruleset contains no rules");

  std::unordered_set<std::string> ids;
  auto check_clause = [&](const Rule& rule, const Clause& clause) {
    const LinguisticVariable* var = find_variable(variables, clause.variable);
    if (var == nullptr) {
      error("rule '" + rule.id + "': unknown variable '" + clause.variable + "'");
      return;
    }
    if (!var->has_category(clause.category)) {
      error("rule '" + rule.id + "': variable '" + clause.variable + "' has no category '" +
            clause.category + "'");
    }
  };

  std::set<std::string> produced;
  for (const Rule& rule : ruleset.rules) {
    if (!ids.insert(rule.id).second) {
      error("duplicate rule id '" + rule.id + "'");
    }
    if (rule.antecedent.empty()) {
      error("rule '" + rule.id + "': empty antecedent");
    }
    for (const Clause& clause : rule.antecedent) check_clause(rule, clause);

    if (rule.consequent.negated) {
      error("rule '" + rule.id + "': negated consequent is not allowed");
    }
    if (rule.consequent.variable != ruleset.output_variable) {
      error("rule '" + rule.id + "': consequent variable '" + rule.consequent.variable +
            "' is not the output variable '" + ruleset.output_variable + "'");
    } else if (output != nullptr && !output->has_category(rule.consequent.category)) {
      error("rule '" + rule.id + "': output variable has no category '" +
            rule.consequent.category + "'");
    } else {
      produced.insert(rule.consequent.category);
    }
  }

  if (output != nullptr) {
    for (const Category& c : output->categories()) {
      if (produced.count(c.name) == 0) {
        info("output category '" + c.name + "' is never produced by any rule");
      }
    }
    // Overlapping output curves: necessity treats categories as competing
    // events, so shared mass is worth knowing about.
    const auto grid = output->grid();
    const auto& cats = output->categories();
    for (std::size_t a = 0; a < cats.size(); ++a) {
      for (std::size_t b = a + 1; b < cats.size(); ++b) {
        const bool overlap = std::any_of(grid.begin(), grid.end(), [&](double x) {
          return cats[a].mf.evaluate(x).value() > 0.0 && cats[b].mf.evaluate(x).value() > 0.0;
        });
        if (overlap) {
          info("output categories '" + cats[a].name + "' and '" + cats[b].name +
               "' overlap on the grid");
        }
      }
    }
  }

  return report;
}

}  // namespace pfis

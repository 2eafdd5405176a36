#include "pfis/inference.hpp"

#include <algorithm>
#include <cmath>

#include "pfis/errors.hpp"

namespace pfis {

Degree PossibilityDistribution::max_pi() const {
  double m = 0.0;
  for (const Degree d : pi) m = std::max(m, d.value());
  return Degree(m);
}

std::optional<Degree> PossibilityDistribution::category_possibility(
    std::string_view category) const {
  for (const auto& [name, value] : per_category) {
    if (name == category) return value;
  }
  return std::nullopt;
}

Degree fuzzify(const Observation& obs, const Clause& clause,
               const std::vector<LinguisticVariable>& variables) {
  const LinguisticVariable* var = find_variable(variables, clause.variable);
  if (var == nullptr) {
    throw DomainError("unknown variable '" + clause.variable + "'");
  }
  const auto it = obs.find(clause.variable);
  if (it == obs.end()) {
    throw DataError("observation missing variable '" + clause.variable + "'");
  }
  if (!std::isfinite(it->second)) {
    throw DataError("observation value for variable '" + clause.variable + "' is not finite");
  }
  const Degree mu = var->membership(clause.category, it->second);
  return clause.negated ? fuzzy_not(mu) : mu;
}

Activation activate(const Rule& rule, const Observation& obs,
                    const std::vector<LinguisticVariable>& variables) {
  auto with_context = [&](const auto& e) {
    return std::string("rule '") + rule.id + "': " + e.what();
  };
  try {
    Degree level = fuzzify(obs, rule.antecedent.at(0), variables);
    for (std::size_t i = 1; i < rule.antecedent.size(); ++i) {
      const Degree d = fuzzify(obs, rule.antecedent[i], variables);
      level = rule.connective == Connective::And ? fuzzy_and(level, d) : fuzzy_or(level, d);
    }
    return Activation{rule.id, level, rule.consequent.category};
  } catch (const DataError& e) {
    throw DataError(with_context(e));
  } catch (const DomainError& e) {
    throw DomainError(with_context(e));
  }
}

PossibilityDistribution aggregate(const std::vector<Activation>& activations,
                                  const LinguisticVariable& output_variable) {
  PossibilityDistribution dist;
  dist.grid = output_variable.grid();
  const std::size_t n = dist.grid.size();

  dist.category_curves.reserve(output_variable.categories().size());
  for (const Category& c : output_variable.categories()) {
    dist.category_curves.emplace_back(c.name, output_variable.sample_on_grid(c.name));
  }
  auto curve_of = [&](std::string_view name) -> const std::vector<Degree>* {
    for (const auto& [cat, curve] : dist.category_curves) {
      if (cat == name) return &curve;
    }
    return nullptr;
  };

  dist.pi.assign(n, Degree(0.0));
  for (const Activation& act : activations) {
    const std::vector<Degree>* curve = curve_of(act.consequent_category);
    if (curve == nullptr) {
      throw DomainError("rule '" + act.rule_id + "': output variable '" +
                        output_variable.name() + "' has no category '" +
                        act.consequent_category + "'");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double clipped = std::min(act.level.value(), (*curve)[i].value());
      if (clipped > dist.pi[i].value()) dist.pi[i] = Degree(clipped);
    }
  }

  for (const auto& [name, curve] : dist.category_curves) {
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sup = std::max(sup, std::min(curve[i].value(), dist.pi[i].value()));
    }
    dist.per_category.emplace_back(name, Degree(sup));
  }

  dist.normalized = false;
  return dist;
}

}  // namespace pfis

#include "pfis/possibility.hpp"

#include <algorithm>

#include "pfis/errors.hpp"

namespace pfis {

namespace {
constexpr double kFullyPossibleTolerance = 1e-9;
}

Degree unsure_residual(const PossibilityDistribution& dist) {
  if (dist.normalized) {
    throw DomainError("unsure residual is defined on the raw distribution, not a normalized one");
  }
  return Degree(1.0 - dist.max_pi().value());
}

PossibilityDistribution normalize(const PossibilityDistribution& dist) {
  const double m = dist.max_pi().value();
  if (m <= 0.0) {
    throw DomainError("cannot normalize an all-zero possibility distribution");
  }

  PossibilityDistribution out = dist;
  for (Degree& d : out.pi) d = Degree(d.value() / m);

  out.per_category.clear();
  for (const auto& [name, curve] : out.category_curves) {
    double sup = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
      sup = std::max(sup, std::min(curve[i].value(), out.pi[i].value()));
    }
    out.per_category.emplace_back(name, Degree(sup));
  }
  out.normalized = true;
  return out;
}

Degree necessity(const std::vector<std::pair<std::string, Degree>>& possibilities,
                 std::string_view target) {
  double global_max = 0.0;
  double others_max = 0.0;
  bool found = false;
  for (const auto& [name, value] : possibilities) {
    global_max = std::max(global_max, value.value());
    if (name == target) {
      found = true;
    } else {
      others_max = std::max(others_max, value.value());
    }
  }
  if (!found) {
    throw DomainError("necessity target '" + std::string(target) + "' not among possibilities");
  }
  if (global_max < 1.0 - kFullyPossibleTolerance) {
    throw DomainError(
        "necessity undefined: no event is fully possible (normalize the distribution first)");
  }
  return Degree(1.0 - others_max);
}

Validity check_validity(Degree possibility, Degree necessity) {
  const bool fully_possible = possibility.value() >= 1.0 - kFullyPossibleTolerance;
  if (!fully_possible && necessity.value() > 0.0) return Validity::Invalid;
  return Validity::Valid;
}

std::string verbalize(Degree mu, std::string_view label) {
  const double v = mu.value();
  const char* adverb = nullptr;
  if (v == 0.0) {
    adverb = "Not at all";
  } else if (v == 1.0) {
    adverb = "Absolutely";
  } else if (v <= 0.2) {
    adverb = "A little";
  } else if (v <= 0.4) {
    adverb = "Somewhat";
  } else if (v <= 0.6) {
    adverb = "Pretty";
  } else {
    adverb = "Substantially";
  }
  return std::string(adverb) + " " + std::string(label);
}

PossibilityReport build_report(const PossibilityDistribution& raw, bool unsure_in_necessity) {
  PossibilityReport report;
  report.unsure = unsure_residual(raw);

  if (raw.max_pi().value() <= 0.0) {
    // Total ruleset silence: nothing is possible per the model, everything is
    // unsure. No normalized distribution exists.
    for (const auto& [name, value] : raw.per_category) {
      (void)value;
      report.duals.push_back({name, Degree(0.0), Degree(0.0), true});
    }
    return report;
  }

  PossibilityDistribution norm = normalize(raw);

  auto inputs = norm.per_category;
  if (unsure_in_necessity) {
    inputs.emplace_back("unsure", report.unsure);
  }
  double global_max = 0.0;
  for (const auto& [name, value] : inputs) {
    (void)name;
    global_max = std::max(global_max, value.value());
  }
  const bool necessity_defined = global_max >= 1.0 - 1e-9;

  for (const auto& [name, possibility] : norm.per_category) {
    const Degree n = necessity_defined ? necessity(inputs, name) : Degree(0.0);
    const bool valid = check_validity(possibility, n) == Validity::Valid;
    report.duals.push_back({name, possibility, n, valid});
  }
  report.normalized = std::move(norm);
  return report;
}

}  // namespace pfis

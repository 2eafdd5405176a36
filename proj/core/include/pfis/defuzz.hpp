#pragma once

#include <utility>
#include <vector>

#include "pfis/inference.hpp"

namespace pfis {

/// Crisp scenario values cut from the possibilistic area under the curve.
struct ScenarioSet {
  std::vector<std::pair<double, double>> percentiles;  // (p, output value)
  double total_auc = 0.0;
};

/// Composite trapezoidal integral of pi over the grid.
double auc(const PossibilityDistribution& dist);

/// For each fraction p in (0,1), the left-most x where the cumulative
/// integral of pi reaches p * auc, linearly interpolated inside the
/// straddling grid cell. Throws DomainError when the distribution carries no
/// mass or a fraction lies outside (0,1).
ScenarioSet percentile_defuzz(const PossibilityDistribution& dist,
                              const std::vector<double>& fractions);

}  // namespace pfis

#include "pfis/defuzz.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pfis/errors.hpp"

namespace pfis {

namespace {

// Cumulative trapezoidal integral at every grid node; cum[0] = 0.
std::vector<double> cumulative(const PossibilityDistribution& dist) {
  const std::size_t n = dist.grid.size();
  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double dx = dist.grid[i] - dist.grid[i - 1];
    cum[i] = cum[i - 1] + 0.5 * (dist.pi[i - 1].value() + dist.pi[i].value()) * dx;
  }
  return cum;
}

}  // namespace

double auc(const PossibilityDistribution& dist) {
  if (dist.grid.size() < 2) {
    throw DomainError("area under the curve needs at least two grid nodes");
  }
  return cumulative(dist).back();
}

ScenarioSet percentile_defuzz(const PossibilityDistribution& dist,
                              const std::vector<double>& fractions) {
  if (dist.grid.size() < 2) {
    throw DomainError("percentile defuzzification needs at least two grid nodes");
  }
  for (const double p : fractions) {
    if (!(p > 0.0 && p < 1.0)) {
      throw DomainError("percentile fraction " + std::to_string(p) + " outside (0, 1)");
    }
  }

  const std::vector<double> cum = cumulative(dist);
  const double total = cum.back();
  if (total <= 0.0) {
    throw DomainError("distribution carries no possibility mass; report unsure instead");
  }

  ScenarioSet out;
  out.total_auc = total;
  out.percentiles.reserve(fractions.size());
  for (const double p : fractions) {
    const double target = p * total;
    // First node whose cumulative mass reaches the target; since cum is
    // non-decreasing and cum[i-1] < target, inverting within this cell lands
    // on the left-most x reaching the target.
    std::size_t i = 1;
    while (i + 1 < cum.size() && cum[i] < target) ++i;

    // pi is linear inside the cell, so the remaining mass R satisfies
    // y0*u + s*u^2/2 = R with s the in-cell slope. The stable root
    // u = 2R / (y0 + sqrt(y0^2 + 2sR)) covers the flat case (s = 0) too;
    // the discriminant is (y0 + s*dx)^2 >= 0 at the cell boundary.
    const double dx = dist.grid[i] - dist.grid[i - 1];
    const double y0 = dist.pi[i - 1].value();
    const double s = (dist.pi[i].value() - y0) / dx;
    const double remaining = target - cum[i - 1];
    const double denom = y0 + std::sqrt(std::max(y0 * y0 + 2.0 * s * remaining, 0.0));
    double x = dist.grid[i];
    if (denom > 0.0) {
      const double u = std::min(std::max(2.0 * remaining / denom, 0.0), dx);
      x = dist.grid[i - 1] + u;
    }
    out.percentiles.emplace_back(p, x);
  }
  return out;
}

}  // namespace pfis

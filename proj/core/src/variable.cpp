#include "pfis/variable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "pfis/errors.hpp"

namespace pfis {

std::vector<double> make_grid(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double span = hi - lo;
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + span * static_cast<double>(i) / (n - 1);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

LinguisticVariable::LinguisticVariable(std::string name, double universe_min,
                                       double universe_max, int grid_points,
                                       std::vector<Category> categories)
    : name_(std::move(name)),
      universe_min_(universe_min),
      universe_max_(universe_max),
      grid_points_(grid_points),
      categories_(std::move(categories)) {
  if (!(std::isfinite(universe_min_) && std::isfinite(universe_max_)) ||
      !(universe_min_ < universe_max_)) {
    throw std::invalid_argument("variable '" + name_ + "': universe_min must be < universe_max");
  }
  if (grid_points_ < 2) {
    throw std::invalid_argument("variable '" + name_ + "': grid_points must be >= 2");
  }
  if (categories_.empty()) {
    throw std::invalid_argument("variable '" + name_ + "': needs at least one category");
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : categories_) {
    if (!seen.insert(c.name).second) {
      throw std::invalid_argument("variable '" + name_ + "': duplicate category '" + c.name + "'");
    }
    const Support s = c.mf.support();
    if (s.hi < universe_min_ || s.lo > universe_max_) {
      throw std::invalid_argument("variable '" + name_ + "': category '" + c.name +
                                  "' has no support inside the universe");
    }
  }
}

bool LinguisticVariable::has_category(std::string_view category) const {
  return std::any_of(categories_.begin(), categories_.end(),
                     [&](const Category& c) { return c.name == category; });
}

const MembershipFunction& LinguisticVariable::category(std::string_view category) const {
  for (const auto& c : categories_) {
    if (c.name == category) return c.mf;
  }
  throw DomainError("variable '" + name_ + "' has no category '" + std::string(category) + "'");
}

double LinguisticVariable::clamp(double x) const {
  return std::clamp(x, universe_min_, universe_max_);
}

Degree LinguisticVariable::membership(std::string_view cat, double x) const {
  return category(cat).evaluate(clamp(x));
}

std::vector<double> LinguisticVariable::grid() const {
  return make_grid(universe_min_, universe_max_, grid_points_);
}

std::vector<Degree> LinguisticVariable::sample_on_grid(std::string_view cat) const {
  const auto& mf = category(cat);
  const auto nodes = grid();
  std::vector<Degree> out;
  out.reserve(nodes.size());
  for (const double x : nodes) out.push_back(mf.evaluate(x));
  return out;
}

const LinguisticVariable* find_variable(const std::vector<LinguisticVariable>& vars,
                                        std::string_view name) {
  for (const auto& v : vars) {
    if (v.name() == name) return &v;
  }
  return nullptr;
}

}  // namespace pfis

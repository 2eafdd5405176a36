#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pfis/membership.hpp"

namespace pfis {

struct Category {
  std::string name;
  MembershipFunction mf;
};

/// A named variable over a bounded universe, discretized on a uniform grid,
/// with an ordered set of named categories. Values are clamped to the
/// universe before membership evaluation.
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, double universe_min, double universe_max,
                     int grid_points, std::vector<Category> categories);

  const std::string& name() const noexcept { return name_; }
  double universe_min() const noexcept { return universe_min_; }
  double universe_max() const noexcept { return universe_max_; }
  int grid_points() const noexcept { return grid_points_; }
  const std::vector<Category>& categories() const noexcept { return categories_; }

  bool has_category(std::string_view category) const;
  /// Throws DomainError naming both the variable and the category.
  const MembershipFunction& category(std::string_view category) const;

  double clamp(double x) const;
  /// Membership of the (clamped) value in the named category.
  Degree membership(std::string_view category, double x) const;

  /// Uniform grid over [universe_min, universe_max], endpoints inclusive.
  std::vector<double> grid() const;
  /// Category membership evaluated at every grid node.
  std::vector<Degree> sample_on_grid(std::string_view category) const;

 private:
  std::string name_;
  double universe_min_;
  double universe_max_;
  int grid_points_;
  std::vector<Category> categories_;
};

/// Uniform n-point grid over [lo, hi], endpoints exact.
std::vector<double> make_grid(double lo, double hi, int n);

const LinguisticVariable* find_variable(const std::vector<LinguisticVariable>& vars,
                                        std::string_view name);

}  // namespace pfis

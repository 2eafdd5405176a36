#pragma once

#include <variant>

#include "pfis/degree.hpp"

namespace pfis {

/// Trapezoid described by its flat top [lower, upper], slope extents alpha
/// (left) and beta (right), and height h in [0, 1]. A zero slope extent
/// degenerates that edge into a crisp step; the flat top stays closed, so the
/// boundary point itself carries h. With lower == upper and both extents zero
/// this is a singleton.
struct Trapezoid {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double height = 1.0;
};

enum class SigmoidDirection { Increasing, Decreasing };

/// Straight-line stand-in for a sigmoid: a ramp of the given width centred on
/// midpoint, flat at 0 on one side and at h on the other.
struct LinearSigmoid {
  double midpoint = 0.0;
  double width = 1.0;
  SigmoidDirection direction = SigmoidDirection::Increasing;
  double height = 1.0;
};

/// Closed interval outside of which a membership function is identically 0.
/// Sigmoids saturate, so one end is infinite.
struct Support {
  double lo;
  double hi;
};

Degree eval_trapezoid(const Trapezoid& mf, double x);
Degree eval_sigmoid(const LinearSigmoid& mf, double x);

/// Piecewise-linear membership curve; either shape above. Parameters are
/// validated at construction, evaluation is total on finite inputs.
class MembershipFunction {
 public:
  MembershipFunction(Trapezoid t);       // NOLINT(google-explicit-constructor)
  MembershipFunction(LinearSigmoid s);   // NOLINT(google-explicit-constructor)

  Degree evaluate(double x) const;
  Support support() const;
  double height() const;

  const Trapezoid* trapezoid() const { return std::get_if<Trapezoid>(&shape_); }
  const LinearSigmoid* sigmoid() const { return std::get_if<LinearSigmoid>(&shape_); }

 private:
  std::variant<Trapezoid, LinearSigmoid> shape_;
};

}  // namespace pfis

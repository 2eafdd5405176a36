#include "pfis/membership.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pfis {

namespace {

void require_finite_input(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("membership evaluation requires a finite value, got " +
                                std::to_string(x));
  }
}

void validate(const Trapezoid& t) {
  if (!(std::isfinite(t.lower) && std::isfinite(t.upper) && std::isfinite(t.alpha) &&
        std::isfinite(t.beta) && std::isfinite(t.height))) {
    throw std::invalid_argument("trapezoid parameters must be finite");
  }
  if (t.lower > t.upper) throw std::invalid_argument("trapezoid requires lower <= upper");
  if (t.alpha < 0.0 || t.beta < 0.0) {
    throw std::invalid_argument("trapezoid slope extents must be >= 0");
  }
  if (!(t.height >= 0.0 && t.height <= 1.0)) {
    throw std::invalid_argument("trapezoid height must lie in [0, 1]");
  }
}

void validate(const LinearSigmoid& s) {
  if (!(std::isfinite(s.midpoint) && std::isfinite(s.width) && std::isfinite(s.height))) {
    throw std::invalid_argument("sigmoid parameters must be finite");
  }
  if (!(s.width > 0.0)) throw std::invalid_argument("sigmoid width must be > 0");
  if (!(s.height >= 0.0 && s.height <= 1.0)) {
    throw std::invalid_argument("sigmoid height must lie in [0, 1]");
  }
}

// Ramp height at a clamped slope fraction; never exceeds h, and reaches h
// exactly where the fraction saturates.
double ramp(double height, double num, double den) {
  const double t = std::min(std::max(num / den, 0.0), 1.0);
  return height * t;
}

}  // namespace

Degree eval_trapezoid(const Trapezoid& mf, double x) {
  require_finite_input(x);
  // Clause order makes the degenerate cases (alpha or beta zero) fall out as
  // crisp steps with the flat top closed at the boundary.
  if (x < mf.lower - mf.alpha) return Degree(0.0);
  if (x < mf.lower) return Degree(ramp(mf.height, x - (mf.lower - mf.alpha), mf.alpha));
  if (x <= mf.upper) return Degree(mf.height);
  if (x <= mf.upper + mf.beta) return Degree(ramp(mf.height, mf.upper + mf.beta - x, mf.beta));
  return Degree(0.0);
}

Degree eval_sigmoid(const LinearSigmoid& mf, double x) {
  require_finite_input(x);
  const double left = mf.midpoint - mf.width / 2.0;
  const double right = mf.midpoint + mf.width / 2.0;
  if (mf.direction == SigmoidDirection::Increasing) {
    if (x < left) return Degree(0.0);
    if (x <= right) return Degree(ramp(mf.height, x - left, mf.width));
    return Degree(mf.height);
  }
  if (x < left) return Degree(mf.height);
  if (x <= right) return Degree(ramp(mf.height, right - x, mf.width));
  return Degree(0.0);
}

MembershipFunction::MembershipFunction(Trapezoid t) : shape_(t) { validate(t); }

MembershipFunction::MembershipFunction(LinearSigmoid s) : shape_(s) { validate(s); }

Degree MembershipFunction::evaluate(double x) const {
  if (const auto* t = trapezoid()) return eval_trapezoid(*t, x);
  return eval_sigmoid(*sigmoid(), x);
}

Support MembershipFunction::support() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (const auto* t = trapezoid()) return {t->lower - t->alpha, t->upper + t->beta};
  const auto& s = *sigmoid();
  if (s.direction == SigmoidDirection::Increasing) return {s.midpoint - s.width / 2.0, inf};
  return {-inf, s.midpoint + s.width / 2.0};
}

double MembershipFunction::height() const {
  if (const auto* t = trapezoid()) return t->height;
  return sigmoid()->height;
}

}  // namespace pfis

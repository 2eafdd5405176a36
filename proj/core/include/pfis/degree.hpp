#pragma once

#include <algorithm>
#include <stdexcept>

namespace pfis {

/// A membership / possibility degree, constrained to [0, 1] at construction.
/// Reads back implicitly as double so numeric code stays lightweight.
class Degree {
 public:
  constexpr Degree() = default;

  explicit Degree(double v) : value_(v) {
    if (!(v >= 0.0 && v <= 1.0)) {  // also rejects NaN
      throw std::invalid_argument("degree out of [0, 1]: " + std::to_string(v));
    }
  }

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

// Fuzzy connectives: AND = minimum, OR = maximum, NOT = complement.
inline Degree fuzzy_and(Degree a, Degree b) { return Degree(std::min(a.value(), b.value())); }
inline Degree fuzzy_or(Degree a, Degree b) { return Degree(std::max(a.value(), b.value())); }
inline Degree fuzzy_not(Degree a) { return Degree(1.0 - a.value()); }

}  // namespace pfis

#pragma once

#include <cmath>
#include <limits>

#include "pfis/degree.hpp"
#include "pfis/errors.hpp"

namespace pfis {

/// Surprise in bits at an outcome forecast with support f: -log2(f).
/// Zero support yields +infinity ("infinite surprise").
inline double ignorance(Degree f) {
  if (f.value() == 0.0) return std::numeric_limits<double>::infinity();
  const double bits = -std::log2(f.value());
  return bits == 0.0 ? 0.0 : bits;  // -log2(1) gives -0.0
}

/// Surprise removed by the forecast relative to a baseline:
/// ignorance(baseline) - ignorance(forecast). Positive means the forecast
/// helped. This measure is notional; serializations tag it as experimental.
inline double notional_info_gain(Degree forecast, Degree baseline) {
  if (forecast.value() == 0.0 && baseline.value() == 0.0) {
    throw DomainError("information gain undefined: forecast and baseline both have zero support");
  }
  return ignorance(baseline) - ignorance(forecast);
}

}  // namespace pfis

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfis/degree.hpp"
#include "pfis/inference.hpp"

namespace pfis {

/// Possibility mass the ruleset left unaccounted for: 1 - max(pi).
/// Requires a raw (not yet normalized) distribution.
Degree unsure_residual(const PossibilityDistribution& dist);

/// Rescales pi so its maximum is exactly 1 and recomputes per-category
/// possibilities from the stretched curve. Throws DomainError on an all-zero
/// distribution (callers should report unsure = 1 instead).
PossibilityDistribution normalize(const PossibilityDistribution& dist);

/// N(target) = 1 - max possibility of every other entry. The input must come
/// from a normalized distribution: if no entry reaches 1 (tolerance 1e-9)
/// necessity is undefined and a DomainError is thrown.
Degree necessity(const std::vector<std::pair<std::string, Degree>>& possibilities,
                 std::string_view target);

enum class Validity { Valid, Invalid };

/// A (Pi, N) pair is invalid iff Pi < 1 while N > 0; nothing can be necessary
/// without being fully possible. Equality to 1 is tested at 1e-9.
Validity check_validity(Degree possibility, Degree necessity);

/// Lexical rendering of a degree: "Not at all", "A little" (<= 0.2),
/// "Somewhat" (<= 0.4), "Pretty" (<= 0.6), "Substantially" (< 1), or
/// "Absolutely", followed by the label.
std::string verbalize(Degree mu, std::string_view label);

struct DualMeasure {
  std::string category;
  Degree possibility;
  Degree necessity;
  bool valid = true;
};

struct PossibilityReport {
  std::vector<DualMeasure> duals;  // output-category order
  Degree unsure;
  /// Absent when the raw distribution is identically zero.
  std::optional<PossibilityDistribution> normalized;
};

/// Full possibility-theory readout of a raw aggregated distribution: unsure
/// residual, normalization, per-category duals. When unsure_in_necessity is
/// set, the residual competes as an extra event in every necessity value.
/// When no entry of the normalized per-category map reaches 1 (possible when
/// consequent curves have height < 1), necessity degenerates to 0 for every
/// category rather than violating its precondition.
PossibilityReport build_report(const PossibilityDistribution& raw, bool unsure_in_necessity);

}  // namespace pfis

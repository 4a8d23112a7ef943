#pragma once

// Exact growth reports: |A|, |A^2|, |A^3| against the bound |A|^2 / 7776,
// with subgroup classification deciding the exempt cases.

#include <string>

#include "fpg/subgroup.hpp"

namespace fpg {

enum class Verdict { bound_met, exempt_cyclic, exempt_dihedral, exempt_factor, bound_violated };
std::string_view to_string(Verdict v);

struct GrowthReport {
  GrowthSizes sizes;
  Rational ratio2, ratio3, cube_over_square;
  Rational bound;  ///< |A|^2 / 7776
  Verdict verdict = Verdict::bound_met;
  SubgroupClass classification;
  /// False when the ambient is not a two-factor free product: the verdict
  /// then compares sizes only.
  bool bound_applies = true;
};

inline const Rational kGrowthConstant{1, 7776};

GrowthReport growth_report(const WordSet& a);

std::string growth_csv_header();
std::string growth_csv_row(const GrowthReport& r);

}  // namespace fpg

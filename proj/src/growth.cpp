#include "fpg/growth.hpp"

namespace fpg {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::bound_met: return "bound-met";
    case Verdict::exempt_cyclic: return "exempt-cyclic";
    case Verdict::exempt_dihedral: return "exempt-dihedral";
    case Verdict::exempt_factor: return "exempt-factor";
    case Verdict::bound_violated: return "bound-violated";
  }
  return "?";
}

GrowthReport growth_report(const WordSet& a) {
  GrowthReport r;
  r.sizes = growth_sizes(a);
  const auto n = static_cast<std::int64_t>(r.sizes.set_size);
  const auto sq = static_cast<std::int64_t>(r.sizes.sq);
  const auto cube = static_cast<std::int64_t>(r.sizes.cube);
  r.ratio2 = Rational(sq, n);
  r.ratio3 = Rational(cube, n);
  r.cube_over_square = Rational(cube, n * n);
  r.bound = Rational(n * n) * kGrowthConstant;
  r.bound_applies = a.group().factor_count() == 2;
  if (r.bound_applies) {
    r.classification = classify_subgroup(a);
    if (verify_classification(a, r.classification)) r.classification = SubgroupClass{};
    switch (r.classification.kind) {
      case SubgroupKind::infinite_cyclic:
      case SubgroupKind::finite_cyclic: r.verdict = Verdict::exempt_cyclic; return r;
      case SubgroupKind::infinite_dihedral: r.verdict = Verdict::exempt_dihedral; return r;
      case SubgroupKind::factor_conjugate: r.verdict = Verdict::exempt_factor; return r;
      case SubgroupKind::other: break;
    }
  }
  r.verdict = Rational(cube) >= r.bound ? Verdict::bound_met : Verdict::bound_violated;
  return r;
}

std::string growth_csv_header() { return "setsize,sq,cube,ratio2,ratio3,bound,verdict"; }

std::string growth_csv_row(const GrowthReport& r) {
  return std::to_string(r.sizes.set_size) + "," + std::to_string(r.sizes.sq) + "," + std::to_string(r.sizes.cube) +
         "," + to_string(r.ratio2) + "," + to_string(r.ratio3) + "," + to_string(r.bound) + "," +
         std::string(to_string(r.verdict));
}

}  // namespace fpg

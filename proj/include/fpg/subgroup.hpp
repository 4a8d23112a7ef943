#pragma once

// Sound-but-incomplete recognition of the subgroup generated by a finite set:
// cyclic, infinite dihedral, or conjugate into a factor.  Every positive
// answer carries a witness that verify_classification rechecks from scratch.

#include <optional>
#include <string>

#include "fpg/product_sets.hpp"

namespace fpg {

enum class SubgroupKind { infinite_cyclic, infinite_dihedral, factor_conjugate, finite_cyclic, other };
std::string_view to_string(SubgroupKind k);
SubgroupKind parse_subgroup_kind(std::string_view s);

struct SubgroupClass {
  SubgroupKind kind = SubgroupKind::other;
  Word root;        ///< cyclic root, or dihedral rotation
  Word reflection;  ///< dihedral only
  Word conjugator;  ///< factor-conjugate: conjugator^-1 * A * conjugator lies in the factor
  std::size_t factor = 0;
  std::uint64_t order = 0;  ///< finite-cyclic only
};

SubgroupClass classify_subgroup(const WordSet& a);

/// nullopt when the witness checks out, otherwise the first violation.
std::optional<std::string> verify_classification(const WordSet& a, const SubgroupClass& c);

/// Elements of the form a' = c^-1 a c with sigma(a') <= 1 in `factor`.
bool conjugates_into_factor(const FreeProduct& fp, const Word& conjugator, std::size_t factor, const Word& a);

}  // namespace fpg

#pragma once

// Explicit small-tripling families, the SL(2,Z) -> C2 * C3 quotient check,
// and seeded word-ball sampling.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fpg/group_spec.hpp"
#include "fpg/product_sets.hpp"
#include "fpg/subgroup.hpp"

namespace fpg {

struct FamilyReport {
  std::string family;
  std::string params;  ///< "N=3", "m=1 n=2 d=10", ...
  std::size_t size = 0, sq = 0, cube = 0;
  Rational bound;      ///< the quantity the checked cardinality must respect
  bool ok = false;
  std::vector<std::string> notes;
};

std::string family_csv_header();
std::string family_csv_row(const FamilyReport& r);

struct FamilyResult {
  WordSet set;
  FamilyReport report;
};

/// A = gens u {x, x^2, ..., x^N}; checks |A^2| <= 2(l+1)N - 2 + l^2 and
/// |A^3| <= 2(l+1)N(N+l) + l^2(N+l) with l = |gens|.
FamilyResult family_powers(const FreeProductPtr& g, const std::vector<Word>& gens, const Word& x, std::int64_t n);

/// Control count |{x^i g x^j : 1 <= i,j <= N}|.
std::size_t powers_middle_count(const FreeProduct& fp, const Word& x, const Word& g, std::int64_t n);

/// F2 x Z with A = {(x, z^i), (y, z^i) : 0 <= i < N}.
FamilyResult family_f2xz(std::int64_t n);
GroupSpec f2xz_group();

/// A_d = {y, x, ..., x^d} in BS(m, n); checks |A_d^3| < (10 + |m| + |n|)(d + 1).
/// Throws std::invalid_argument for m or n zero and for |m| = |n| = 1.
FamilyResult family_bs(std::int64_t m, std::int64_t n, std::int64_t d);
GroupSpec bs_group(std::int64_t m, std::int64_t n);
/// |{x^i y x^j : 1 <= i,j <= d}|.
std::size_t bs_control_count(std::int64_t m, std::int64_t n, std::int64_t d);

// ---------------------------------------------------------------------------
// SL(2,Z) modulo {+-I} as C2 * C3 = <s> * <t>, s -> S, t -> ST.

GroupSpec psl2_group();
/// Word over s, t evaluating to +-M.  Throws std::invalid_argument unless det M = 1.
Word sl2_to_psl2_word(const FreeProduct& psl2, const Matrix2& m);
Matrix2 evaluate_psl2_word(const FreeProduct& psl2, const Word& w);

struct QuotientReport {
  std::size_t size = 0, image_size = 0, cube = 0, image_cube = 0, cube_n = 0;
  bool image_half = false;         ///< |pi(A)| >= |A| / 2
  bool cube_identity = false;      ///< (AN)^3 == A^3 N
  bool count_identity = false;     ///< |A^3 N| == 2 |pi(A)^3|
  Rational bound;                  ///< |A|^2 / 31104
  bool bound_met = false;
  SubgroupClass image_class;
  bool exempt = false;             ///< pi(A) validated as cyclic, dihedral or finite
  bool ok() const { return image_half && cube_identity && count_identity && (bound_met || exempt); }
};

inline const Rational kQuotientConstant{1, 31104};

/// `a` lives in a one-factor SL(2,Z) ambient.
QuotientReport quotient_check(const WordSet& a);
FamilyReport quotient_family_report(const WordSet& a, const std::string& params);

// ---------------------------------------------------------------------------

/// All reduced words reachable with at most `radius` generator letters
/// (generators and their inverses), sorted canonically.
WordSet word_ball(const FreeProductPtr& g, int radius);

/// `size` distinct elements of the ball, chosen by a seeded Fisher-Yates
/// shuffle.  Throws std::invalid_argument when the ball is too small.
WordSet sample_ball(const FreeProductPtr& g, int radius, std::size_t size, std::uint64_t seed);
WordSet sample_from(const WordSet& pool, std::size_t size, std::uint64_t seed);

}  // namespace fpg

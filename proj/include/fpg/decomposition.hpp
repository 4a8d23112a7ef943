#pragma once

// The constructive growth-versus-structure pipeline for subsets of a
// two-factor free product G * H:
//
//   majority conjugation -> X/Y extraction -> median split -> short words
//   -> fiber bound for F_y(u1, u2) = u1 y u2 -> |XYX| -> |Y^3| -> |YaY|
//   -> subgroup classification
//
// Every growth claim is backed by an explicit witness set inside A^3, so the
// constants below are claims that validate_certificate rechecks by counting.

#include <optional>
#include <stdexcept>
#include <variant>

#include "fpg/certificate.hpp"
#include "fpg/periodicity.hpp"

namespace fpg {

inline const Rational kShortWordConstant{1, 5184};
inline const Rational kFiberConstant{1, 2592};
inline const Rational kTripleConstant{1, 7776};
inline const Rational kSquareConstant{1, 1296};

struct MajorityConjugation {
  Word conjugator;  ///< reduced == conjugator * A * conjugator^-1
  WordSet reduced;
  bool dihedral_edge = false;
  int steps = 0;
};

/// Conjugates away letters x with more than half of A of the form (x, ..., x^-1).
MajorityConjugation reduce_majority_conjugate(const WordSet& a);

enum class XYStage { extracted, median_split, long_words };
std::string_view to_string(XYStage s);

struct XYWitness {
  Word conjugator;  ///< X, Y are subsets of conjugator * A * conjugator^-1
  WordSet conjugated;
  WordSet x, y;
  XYStage stage = XYStage::extracted;
  bool dihedral_edge = false;
  std::string branch;  ///< which case of the extraction produced X, Y
};

XYWitness extract_xy(const WordSet& a);
XYWitness order_xy(const XYWitness& w);

/// Growth (constant 1/5184), factor-conjugate, or the filtered witness.
using DispatchResult = std::variant<Certificate, XYWitness>;
DispatchResult short_word_dispatch(const XYWitness& w, const WordSet& a, std::vector<TraceStep>* trace = nullptr);

struct CollisionReport {
  std::size_t max_fiber = 0;
  std::size_t image_size = 0;
  std::optional<PeriodicDecomposition> decomposition;
  /// Some first component of a maximal fiber ends with the period (or with
  /// the period followed by g^-1, or omega g period g^-1, for odd words).
  bool suffix_evidence = false;
};

CollisionReport collision_analysis(const FreeProduct& fp, const Word& y, const WordSet& x);

class AnalysisIncomplete : public std::runtime_error {
 public:
  AnalysisIncomplete(std::string what, std::vector<TraceStep> trace)
      : std::runtime_error(std::move(what)), trace_(std::move(trace)) {}
  const std::vector<TraceStep>& trace() const { return trace_; }

 private:
  std::vector<TraceStep> trace_;
};

struct DichotomyOptions {
  /// Number of y in Y tried in the fiber-bound step (0 = all).
  std::size_t fiber_candidates = 0;
  /// Sets below this size go straight to enumeration plus classification.
  std::size_t small_set = 36;
};

/// Throws AnalysisIncomplete when no branch closes.
Certificate dichotomy(const WordSet& a, const DichotomyOptions& opts = {});

}  // namespace fpg

#pragma once

// Periodic, right periodic and interior periodic words.
//
//   periodic:           y = period^s tail            (tail a prefix of period)
//   right periodic:     y = head period^s            (head a suffix of period)
//   interior periodic:  y = g period^s tail gamma    (g absorbed into period[0])
//   interior right:     y = g head period^s gamma    (gamma absorbed into period.back())

#include <optional>

#include "fpg/free_product.hpp"

namespace fpg {

enum class PeriodFlavor { periodic, totally_periodic, right_periodic, interior_periodic, interior_right_periodic };
std::string_view to_string(PeriodFlavor f);

struct PeriodicDecomposition {
  Word g;       ///< sigma <= 1, possibly identity
  Word period;  ///< primitive
  std::int64_t s = 0;
  Word tail;    ///< tail for left flavors, head for right flavors
  Word gamma;   ///< sigma <= 1; non-identity exactly for interior flavors
  PeriodFlavor flavor = PeriodFlavor::periodic;
  /// Interior words only: tail*gamma when that is also a prefix (suffix) of
  /// the period, the alternative reading where the tail swallows gamma.
  std::optional<Word> absorbed_tail;

  Word reassemble(const FreeProduct& fp) const;
};

/// Smallest p >= 1 with w[i] == w[i+p] for all valid i (w.size() if none).
std::size_t smallest_period(std::span<const Letter> w);

std::optional<PeriodicDecomposition> period_decompose(const Word& x, bool from_right = false);

/// Odd words of length >= 5 only; even words defer to period_decompose.
std::optional<PeriodicDecomposition> interior_period_decompose(const FreeProduct& fp, const Word& x,
                                                               bool from_right = false);

}  // namespace fpg

#pragma once

// Euclidean decomposition of SL(2,Z) matrices over S = [[0,-1],[1,0]] and
// T = [[1,1],[0,1]].

#include <cstdint>
#include <utility>
#include <vector>

#include "fpg/factor_groups.hpp"

namespace fpg::sl2 {

inline Matrix2 S() { return {0, -1, 1, 0}; }
inline Matrix2 T() { return {1, 1, 0, 1}; }

/// M == (negate ? -I : I) * product of factors, each ('S', 1) or ('T', k).
struct Decomposition {
  bool negate = false;
  std::vector<std::pair<char, std::int64_t>> factors;
};

/// Throws std::overflow_error when some T exponent exceeds int64.
Decomposition decompose(const Matrix2& m);

Matrix2 evaluate(const Decomposition& d);

}  // namespace fpg::sl2

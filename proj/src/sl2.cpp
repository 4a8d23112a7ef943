#include "fpg/sl2.hpp"

#include <limits>
#include <stdexcept>

namespace fpg::sl2 {

namespace {

std::int64_t narrow(const BigInt& v) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("SL(2,Z) exponent does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Decomposition decompose(const Matrix2& m) {
  if (m.det() != 1) throw std::invalid_argument("matrix is not in SL(2,Z)");
  Decomposition out;
  BigInt a = m.a, b = m.b, c = m.c, d = m.d;
  while (c != 0) {
    // M = T^q * (T^-q M), then T^-q M = S * (S^-1 T^-q M).
    BigInt q = a / c;
    a -= q * c;
    b -= q * d;
    if (q != 0) out.factors.emplace_back('T', narrow(q));
    out.factors.emplace_back('S', 1);
    BigInt na = c, nb = d;
    c = -a;
    d = -b;
    a = na;
    b = nb;
  }
  // Now [[a,b],[0,a]] with a = +-1.
  if (a == 1) {
    if (b != 0) out.factors.emplace_back('T', narrow(b));
  } else {
    out.negate = true;
    if (b != 0) out.factors.emplace_back('T', narrow(-b));
  }
  return out;
}

Matrix2 evaluate(const Decomposition& d) {
  Matrix2 acc = d.negate ? Matrix2{-1, 0, 0, -1} : Matrix2::identity();
  for (const auto& [sym, k] : d.factors)
    acc = acc * (sym == 'S' ? S() : Matrix2{1, k, 0, 1});
  return acc;
}

}  // namespace fpg::sl2

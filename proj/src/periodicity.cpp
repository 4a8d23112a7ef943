#include "fpg/periodicity.hpp"

namespace fpg {

std::string_view to_string(PeriodFlavor f) {
  switch (f) {
    case PeriodFlavor::periodic: return "periodic";
    case PeriodFlavor::totally_periodic: return "totally-periodic";
    case PeriodFlavor::right_periodic: return "right-periodic";
    case PeriodFlavor::interior_periodic: return "interior-periodic";
    case PeriodFlavor::interior_right_periodic: return "interior-right-periodic";
  }
  return "?";
}

Word PeriodicDecomposition::reassemble(const FreeProduct& fp) const {
  const Word body = fp.power(period, s);
  const bool right = flavor == PeriodFlavor::right_periodic || flavor == PeriodFlavor::interior_right_periodic;
  const Word parts[] = {g, right ? tail : body, right ? body : tail, gamma};
  return fp.multiply(parts);
}

std::size_t smallest_period(std::span<const Letter> w) {
  // Failure function: the longest proper border has length n - p.
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && !(w[i] == w[k])) k = fail[k - 1];
    if (w[i] == w[k]) ++k;
    fail[i] = k;
  }
  return n - fail[n - 1];
}

std::optional<PeriodicDecomposition> period_decompose(const Word& x, bool from_right) {
  if (from_right) {
    auto d = period_decompose(x.reversed(), false);
    if (!d) return std::nullopt;
    d->period = d->period.reversed();
    d->tail = d->tail.reversed();
    d->flavor = PeriodFlavor::right_periodic;
    return d;
  }
  const std::size_t n = x.size();
  const std::size_t p = smallest_period(x.letters());
  if (n < 2 || 2 * p > n) return std::nullopt;
  PeriodicDecomposition d;
  d.period = x.slice(0, p);
  d.s = static_cast<std::int64_t>(n / p);
  d.tail = x.slice(n - n % p, n % p);
  d.flavor = n % p == 0 ? PeriodFlavor::totally_periodic : PeriodFlavor::periodic;
  return d;
}

std::optional<PeriodicDecomposition> interior_period_decompose(const FreeProduct& fp, const Word& x, bool from_right) {
  const std::size_t n = x.size();
  if (n % 2 == 0) return period_decompose(x, from_right);
  if (n < 5) return std::nullopt;
  // Interior z = x[1, n-1); the outer letters are free apart from one absorption.
  const auto z = x.letters().subspan(1, n - 2);
  const std::size_t m = n - 1;  // length of the periodic part
  for (std::size_t p = 1; 2 * p <= m; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < z.size() && ok; ++i) ok = z[i] == z[i + p];
    if (!ok) continue;
    PeriodicDecomposition d;
    d.s = static_cast<std::int64_t>(m / p);
    const std::size_t rest = m % p;
    if (!from_right) {
      // Periodic part w = (x[p], x[1], ..., x[n-2]); x[0] = g * x[p].
      const Letter first = x[p];
      if (first.factor() != x[0].factor()) continue;
      const FactorGroup& f = fp.factor(first.factor());
      std::vector<Letter> period{first};
      for (std::size_t i = 1; i < p; ++i) period.push_back(x[i]);
      d.period = Word(period);
      d.g = fp.letter(first.factor(), f.multiply(x[0].element(), f.inverse(first.element())));
      d.tail = x.slice(n - 1 - rest, rest);
      d.gamma = x.slice(n - 1, 1);
      d.flavor = PeriodFlavor::interior_periodic;
      if (rest + 1 <= p && d.period[rest] == x[n - 1]) {
        std::vector<Letter> alt(d.tail.begin(), d.tail.end());
        alt.push_back(x[n - 1]);
        d.absorbed_tail = Word(std::move(alt));
      }
    } else {
      // Periodic part w = (x[1], ..., x[n-2], x[n-1-p]); x[n-1] = x[n-1-p] * gamma.
      const Letter last = x[n - 1 - p];
      if (last.factor() != x[n - 1].factor()) continue;
      const FactorGroup& f = fp.factor(last.factor());
      std::vector<Letter> period;
      for (std::size_t i = n - p; i < n - 1; ++i) period.push_back(x[i]);
      period.push_back(last);
      d.period = Word(period);
      d.gamma = fp.letter(last.factor(), f.multiply(f.inverse(last.element()), x[n - 1].element()));
      d.tail = x.slice(1, rest);
      d.g = x.slice(0, 1);
      d.flavor = PeriodFlavor::interior_right_periodic;
      if (rest + 1 <= p && d.period[p - 1 - rest] == x[0]) {
        std::vector<Letter> alt{x[0]};
        alt.insert(alt.end(), d.tail.begin(), d.tail.end());
        d.absorbed_tail = Word(std::move(alt));
      }
    }
    return d;
  }
  return std::nullopt;
}

}  // namespace fpg

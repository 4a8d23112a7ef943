#pragma once

// Shared fixtures for the test binaries: the standard ambient groups, a
// naive reduction oracle, and seeded random words and sets.

#include <functional>
#include <random>
#include <unordered_set>

#include "fpg/group_spec.hpp"
#include "fpg/product_sets.hpp"

namespace fpg::testing {

inline GroupSpec zz() { return load_group(free_product_doc({integers_doc("a"), integers_doc("b")})); }
inline GroupSpec c2c3() { return load_group(free_product_doc({cyclic_doc(2, "s"), cyclic_doc(3, "t")})); }
inline GroupSpec c2c2() { return load_group(free_product_doc({cyclic_doc(2, "x"), cyclic_doc(2, "y")})); }
/// (Z * Z) * C2 with generators a, b in the nested factor and c of order 2.
inline GroupSpec zz_c2() {
  return load_group(free_product_doc({free_product_doc({integers_doc("a"), integers_doc("b")}), cyclic_doc(2, "c")}));
}

inline WordSet set_of(const GroupSpec& g, std::initializer_list<const char*> words) {
  std::vector<Word> out;
  for (const char* w : words) out.push_back(g.group().parse(w));
  return WordSet(g.ambient, std::move(out));
}

/// Concatenate, then repeatedly merge adjacent same-factor letters and drop
/// identities until nothing changes.  Uses factor arithmetic only.
inline Word naive_reduce(const FreeProduct& fp, std::vector<Letter> letters) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const Letter l = letters[i];
      if (l.element() == fp.factor(l.factor()).identity()) {
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (i + 1 < letters.size() && letters[i + 1].factor() == l.factor()) {
        const Element e = fp.factor(l.factor()).multiply(l.element(), letters[i + 1].element());
        letters[i] = Letter(l.factor(), e);
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        changed = true;
        break;
      }
    }
  }
  return Word(std::move(letters));
}

inline Word naive_multiply(const FreeProduct& fp, const Word& x, const Word& y) {
  std::vector<Letter> all(x.begin(), x.end());
  all.insert(all.end(), y.begin(), y.end());
  return naive_reduce(fp, std::move(all));
}

/// Exact cover by branching on the first uncovered element of A^2: some
/// translate x = u a^-1 must cover u.
inline std::size_t brute_cover(const WordSet& a) {
  const FreeProduct& fp = a.group();
  const WordSet sq = product(a, a);
  std::size_t best = sq.size();
  std::vector<Word> chosen;
  std::function<void()> search = [&]() {
    if (chosen.size() >= best) return;
    for (const auto& u : sq) {
      bool covered = false;
      for (const auto& x : chosen)
        if (a.contains(fp.multiply(fp.inverse(x), u))) covered = true;
      if (covered) continue;
      for (const auto& el : a) {
        chosen.push_back(fp.multiply(u, fp.inverse(el)));
        search();
        chosen.pop_back();
      }
      return;
    }
    best = chosen.size();
  };
  search();
  return best;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::mt19937_64& engine() { return rng_; }

  /// A non-identity element of factor f: a product of one or two powers of
  /// declared generators of that factor.
  Element element(const FreeProduct& fp, std::size_t f) {
    std::vector<const Generator*> gens;
    for (const auto& g : fp.generators())
      if (g.letter.factor() == f) gens.push_back(&g);
    const FactorGroup& grp = fp.factor(f);
    while (true) {
      Element e = grp.identity();
      const auto parts = uniform(1, 2);
      for (std::int64_t p = 0; p < parts; ++p) {
        const Generator* g = gens[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(gens.size()) - 1))];
        std::int64_t k = uniform(1, 3);
        if (uniform(0, 1)) k = -k;
        e = grp.multiply(e, grp.power(g->letter.element(), k));
      }
      if (e != grp.identity()) return e;
    }
  }

  /// Reduced word with exactly `len` letters.
  Word word(const FreeProduct& fp, std::size_t len) {
    std::vector<Letter> letters;
    std::size_t f = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(fp.factor_count()) - 1));
    for (std::size_t i = 0; i < len; ++i) {
      letters.emplace_back(f, element(fp, f));
      if (fp.factor_count() > 1) {
        std::size_t next = f;
        while (next == f) next = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(fp.factor_count()) - 1));
        f = next;
      }
    }
    return Word(std::move(letters));
  }

  Word word_up_to(const FreeProduct& fp, std::size_t max_len) {
    return word(fp, static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(max_len))));
  }

  /// `size` distinct words; lengths start at most 8 and double when the short
  /// words run out (C2 * C2 has only two words of each length).
  WordSet set(const GroupSpec& g, std::size_t size, std::size_t max_len = 8) {
    std::unordered_set<Word, WordHash> seen;
    std::vector<Word> out;
    std::size_t misses = 0;
    while (out.size() < size) {
      Word w = word_up_to(g.group(), max_len);
      if (seen.insert(w).second) {
        out.push_back(std::move(w));
      } else if (++misses > 4 * size + 16) {
        max_len *= 2;
        misses = 0;
      }
    }
    return WordSet(g.ambient, std::move(out));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace fpg::testing

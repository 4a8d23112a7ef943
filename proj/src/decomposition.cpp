#include "fpg/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace fpg {

std::string_view to_string(XYStage s) {
  switch (s) {
    case XYStage::extracted: return "extracted";
    case XYStage::median_split: return "median-split";
    case XYStage::long_words: return "long-words";
  }
  return "?";
}

namespace {

std::size_t total_length(const WordSet& a) {
  std::size_t t = 0;
  for (const auto& w : a) t += w.size();
  return t;
}

Rational need(const Rational& constant, std::size_t n) {
  return constant * Rational(static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n));
}

bool meets(std::size_t count, const Rational& constant, std::size_t n) {
  return Rational(static_cast<std::int64_t>(count)) >= need(constant, n);
}

void note(std::vector<TraceStep>* trace, std::string step, std::string action,
          std::map<std::string, std::int64_t> sizes = {}, const Rational* constant = nullptr) {
  if (!trace) return;
  trace->push_back({std::move(step), std::move(action), std::move(sizes), constant ? to_string(*constant) : ""});
}

std::int64_t ssize(std::size_t v) { return static_cast<std::int64_t>(v); }

/// Builds product witnesses u1*u2*u3 over the given lists (coordinates of the
/// conjugated set) and maps them back to A via gamma^-1 (.) gamma.
class WitnessBuilder {
 public:
  WitnessBuilder(const FreeProduct& fp, const Word& gamma) : fp_(fp), gamma_inv_(fp.inverse(gamma)) {}

  const Word& original(const Word& w) {
    auto it = cache_.find(w);
    if (it == cache_.end()) it = cache_.emplace(w, conjugate(fp_, gamma_inv_, w)).first;
    return it->second;
  }

  std::vector<WitnessProduct> build(std::span<const Word> l1, std::span<const Word> l2, std::span<const Word> l3) {
    std::unordered_set<Word, WordHash> seen;
    std::vector<WitnessProduct> out;
    for (const auto& a : l1)
      for (const auto& b : l2) {
        const Word ab = fp_.multiply(a, b);
        for (const auto& c : l3) {
          Word w = fp_.multiply(ab, c);
          if (!seen.insert(w).second) continue;
          out.push_back({conjugate(fp_, gamma_inv_, w), {original(a), original(b), original(c)}});
        }
      }
    return out;
  }

 private:
  const FreeProduct& fp_;
  Word gamma_inv_;
  std::unordered_map<Word, Word, WordHash> cache_;
};

Certificate growth_certificate(std::vector<WitnessProduct> witness, const Rational& constant) {
  Certificate c;
  c.kind = CertificateKind::growth;
  c.witness = std::move(witness);
  c.constant = constant;
  return c;
}

/// |{l * m * r}| with the middle factor fixed, without materializing.
std::size_t count_fixed_middle(const FreeProduct& fp, std::span<const Word> left, const Word& mid,
                               std::span<const Word> right) {
  std::vector<Word> lm;
  lm.reserve(left.size());
  for (const auto& u : left) lm.push_back(fp.multiply(u, mid));
  return count_products(fp, lm, right);
}

bool ends_with(const Word& u, const Word& p) {
  if (p.size() > u.size()) return false;
  return std::equal(p.begin(), p.end(), u.end() - static_cast<std::ptrdiff_t>(p.size()));
}

}  // namespace

// ---------------------------------------------------------------------------

MajorityConjugation reduce_majority_conjugate(const WordSet& a) {
  const FreeProduct& fp = a.group();
  MajorityConjugation out;
  out.reduced = a;
  while (true) {
    std::unordered_map<std::uint64_t, std::size_t> counts;
    for (const auto& w : out.reduced) {
      if (w.empty()) continue;
      const Letter first = w.front(), last = w.back();
      if (first.factor() != last.factor()) continue;
      if (fp.factor(first.factor()).inverse(first.element()) != last.element()) continue;
      ++counts[first.bits()];
    }
    std::optional<Letter> x;
    for (const auto& w : out.reduced)
      if (!w.empty() && 2 * counts[w.front().bits()] > out.reduced.size()) {
        x = w.front();
        break;
      }
    if (!x) break;
    const Word x_inv = fp.inverse(Word({*x}));
    WordSet next = conjugate(out.reduced, x_inv);
    if (total_length(next) >= total_length(out.reduced)) {
      out.dihedral_edge = true;
      break;
    }
    out.conjugator = fp.multiply(x_inv, out.conjugator);
    out.reduced = std::move(next);
    ++out.steps;
  }
  return out;
}

// ---------------------------------------------------------------------------

XYWitness extract_xy(const WordSet& a) {
  const FreeProduct& fp = a.group();
  if (fp.factor_count() != 2) throw std::invalid_argument("X/Y extraction needs a two-factor free product");
  const MajorityConjugation mc = reduce_majority_conjugate(a);
  const WordSet& ap = mc.reduced;

  std::vector<Word> g_even, h_even, g_odd, h_odd;
  bool has_identity = false;
  for (const auto& w : ap) {
    switch (syllable_type(w)) {
      case SyllableType::identity: has_identity = true; break;
      case SyllableType::g_even: g_even.push_back(w); break;
      case SyllableType::h_even: h_even.push_back(w); break;
      case SyllableType::g_odd: g_odd.push_back(w); break;
      case SyllableType::h_odd: h_odd.push_back(w); break;
    }
  }
  if (has_identity) (g_odd.size() <= h_odd.size() ? g_odd : h_odd).push_back(Word{});

  XYWitness out;
  out.conjugator = mc.conjugator;
  out.conjugated = ap;
  out.dihedral_edge = mc.dihedral_edge;
  const auto amb = a.ambient();
  const std::size_t n = a.size();
  auto big = [&](std::size_t k) { return 18 * k >= n; };
  auto finish = [&](std::vector<Word> x, std::vector<Word> y, std::string branch) {
    out.x = WordSet(amb, std::move(x));
    out.y = WordSet(amb, std::move(y));
    out.branch = std::move(branch);
    return out;
  };

  if (big(g_even.size())) return finish(g_even, g_even, "G-even");
  if (big(h_even.size())) return finish(h_even, h_even, "H-even");
  if (big(g_odd.size()) && big(h_odd.size())) return finish(g_odd, h_odd, "both-odd");
  if (mc.dihedral_edge) return finish(g_odd, h_odd, "dihedral-edge");

  // One odd bucket holds more than 5/6 of A.
  const bool use_g = g_odd.size() >= h_odd.size();
  const std::vector<Word>& odd = use_g ? g_odd : h_odd;
  const std::size_t f = use_g ? 0 : 1;
  const FactorGroup& grp = fp.factor(f);
  std::vector<std::pair<Element, Element>> m;
  m.reserve(odd.size());
  std::vector<Element> e;
  for (const auto& w : odd) {
    if (w.empty()) {
      m.emplace_back(grp.identity(), grp.identity());
      continue;
    }
    m.emplace_back(w.front().element(), grp.inverse(w.back().element()));
    e.push_back(m.back().first);
    e.push_back(m.back().second);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  std::vector<std::pair<std::string, Element>> keyed;
  for (Element el : e) keyed.emplace_back(canonical_encode(fp, fp.letter(f, el)), el);
  std::sort(keyed.begin(), keyed.end());

  std::unordered_map<std::int64_t, int> side;  // 1 = E1, 2 = E2
  const std::size_t half = (keyed.size() + 1) / 2;
  for (std::size_t i = 0; i < keyed.size(); ++i) side[keyed[i].second.value] = i < half ? 1 : 2;

  auto cls = [&](std::size_t k) { return std::pair{side[m[k].first.value], side[m[k].second.value]}; };
  // The identity has no boundary letters, so it sits in every block.
  auto preimage = [&](int s1, int s2) {
    std::vector<Word> out_words;
    for (std::size_t k = 0; k < odd.size(); ++k)
      if (odd[k].empty() || cls(k) == std::pair{s1, s2}) out_words.push_back(odd[k]);
    return out_words;
  };
  auto counts = [&]() {
    std::array<std::array<std::size_t, 3>, 3> c{};
    for (std::size_t k = 0; k < odd.size(); ++k) {
      if (odd[k].empty()) {
        for (int s1 : {1, 2})
          for (int s2 : {1, 2}) ++c[s1][s2];
        continue;
      }
      auto [s1, s2] = cls(k);
      ++c[s1][s2];
    }
    return c;
  };
  auto ok = [&](std::size_t k) { return 15 * k >= odd.size(); };
  auto try_options = [&](const std::string& tag) -> std::optional<XYWitness> {
    const auto c = counts();
    if (ok(c[1][2])) {
      auto s = preimage(1, 2);
      return finish(s, s, "majority-odd E1xE2" + tag);
    }
    if (ok(c[2][1])) {
      auto s = preimage(2, 1);
      return finish(s, s, "majority-odd E2xE1" + tag);
    }
    if (ok(c[1][1]) && ok(c[2][2])) return finish(preimage(1, 1), preimage(2, 2), "majority-odd E1xE1/E2xE2" + tag);
    return std::nullopt;
  };

  if (auto r = try_options("")) return *r;
  {
    const auto c = counts();
    if (ok(c[2][2]))  // relabel so that E2xE2 is the small diagonal block
      for (auto& [key, s] : side) s = 3 - s;
  }
  std::vector<Element> e1;
  for (const auto& [enc, el] : keyed)
    if (side[el.value] == 1) e1.push_back(el);
  for (std::size_t moved = 0; moved < e1.size(); ++moved) {
    side[e1[moved].value] = 2;
    if (auto r = try_options(" after " + std::to_string(moved + 1) + " transfers")) return *r;
  }
  return finish(g_odd, h_odd, "transfer-exhausted");
}

XYWitness order_xy(const XYWitness& w) {
  const FreeProduct& fp = w.x.group();
  auto sorted = [&](const WordSet& s) {
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return s[i].size() < s[j].size(); });
    std::vector<Word> out;
    for (std::size_t i : idx) out.push_back(s[i]);
    return out;
  };
  (void)fp;
  std::vector<Word> xs = sorted(w.x), ys = sorted(w.y);
  XYWitness out = w;
  out.stage = XYStage::median_split;
  if (xs.empty() || ys.empty()) return out;
  const std::size_t mx = (xs.size() + 1) / 2, my = (ys.size() + 1) / 2;
  if (xs[mx - 1].size() > ys[my - 1].size()) {
    std::swap(xs, ys);
  }
  const std::size_t kx = (xs.size() + 1) / 2, ky = (ys.size() + 1) / 2;
  out.x = WordSet(w.x.ambient(), std::vector<Word>(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(kx)));
  out.y = WordSet(w.x.ambient(), std::vector<Word>(ys.end() - static_cast<std::ptrdiff_t>(ky), ys.end()));
  return out;
}

// ---------------------------------------------------------------------------

DispatchResult short_word_dispatch(const XYWitness& w, const WordSet& a, std::vector<TraceStep>* trace) {
  const FreeProduct& fp = a.group();
  const WordSet& ap = w.conjugated;
  const std::size_t n = a.size();
  WitnessBuilder builder(fp, w.conjugator);

  const Word* sample = nullptr;
  for (const auto& y : w.y)
    if (!y.empty()) {
      sample = &y;
      break;
    }
  XYWitness out = w;
  out.stage = XYStage::long_words;
  if (!sample) {
    note(trace, "short-words", "Y has no non-identity element; passing through");
    return out;
  }
  const bool odd = sample->size() % 2 == 1;

  auto try_image = [&](const std::vector<Word>& dom, const Word& mid, const std::string& what) -> std::optional<Certificate> {
    const Word mids[] = {mid};
    auto witness = builder.build(dom, mids, dom);
    const bool pass = meets(witness.size(), kShortWordConstant, n);
    note(trace, "short-words", what + (pass ? "" : " (below constant)"),
         {{"domain", ssize(dom.size())}, {"image", ssize(witness.size())}}, &kShortWordConstant);
    if (!pass) return std::nullopt;
    return growth_certificate(std::move(witness), kShortWordConstant);
  };
  std::vector<Word> xs(w.x.begin(), w.x.end());

  if (odd) {
    const Word* y1 = nullptr;
    const Word* y3 = nullptr;
    for (const auto& y : w.y) {
      if (y.size() <= 1 && !y1) y1 = &y;
      if (y.size() == 3 && !y3) y3 = &y;
    }
    if (y1) {
      std::size_t f = y1->empty() ? 0 : y1->front().factor();
      for (const auto& x : xs)
        if (!x.empty()) {
          f = x.front().factor();
          break;
        }
      const Word* outside = nullptr;
      for (const auto& el : ap)
        if (el.size() >= 2 || (el.size() == 1 && el.front().factor() != f)) {
          outside = &el;
          break;
        }
      if (outside) {
        if (auto c = try_image(xs, *outside, "X inside one factor; F_a for a outside it")) return *c;
      } else {
        note(trace, "short-words", "conjugated set lies in factor " + std::to_string(f));
        Certificate c;
        c.kind = CertificateKind::factor_conjugate;
        c.conjugator = fp.inverse(w.conjugator);
        c.factor = f;
        return c;
      }
    } else if (y3) {
      std::vector<Word> lo, hi;
      for (const auto& x : xs) (x.size() <= 1 ? lo : hi).push_back(x);
      if (auto c = try_image(lo.size() >= hi.size() ? lo : hi, *y3, "length-3 y; F_y on the larger length class"))
        return *c;
    }
  } else {
    const Word* ys = nullptr;
    for (const auto& y : w.y)
      if (y.size() <= 4) {
        ys = &y;
        break;
      }
    if (ys) {
      std::vector<Word> lo, hi;
      for (const auto& x : xs) (x.size() <= 2 ? lo : hi).push_back(x);
      if (auto c = try_image(lo.size() >= hi.size() ? lo : hi, *ys,
                             "even words: length " + std::to_string(ys->size()) + " y; F_y on the larger length class"))
        return *c;
    }
  }

  const std::size_t min_len = odd ? 4 : 5;
  std::vector<Word> kept;
  for (const auto& y : w.y)
    if (y.size() >= min_len) kept.push_back(y);
  note(trace, "short-words",
       odd ? "odd words: Y filtered to length >= 5" : "even words: lengths 2 and 4 dispatched, Y filtered to length >= 6",
       {{"Y", ssize(w.y.size())}, {"kept", ssize(kept.size())}});
  out.y = WordSet(a.ambient(), std::move(kept));
  return out;
}

// ---------------------------------------------------------------------------

CollisionReport collision_analysis(const FreeProduct& fp, const Word& y, const WordSet& x) {
  CollisionReport r;
  std::unordered_map<Word, std::vector<std::pair<std::size_t, std::size_t>>, WordHash> fibers;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Word uy = fp.multiply(x[i], y);
    for (std::size_t j = 0; j < x.size(); ++j) fibers[fp.multiply(uy, x[j])].emplace_back(i, j);
  }
  r.image_size = fibers.size();
  const std::vector<std::pair<std::size_t, std::size_t>>* widest = nullptr;
  for (const auto& [word, pre] : fibers)
    if (pre.size() > r.max_fiber) {
      r.max_fiber = pre.size();
      widest = &pre;
    }
  if (r.max_fiber < 3) return r;
  r.decomposition = interior_period_decompose(fp, y);
  if (!r.decomposition) return r;

  bool same_odd_type = y.size() % 2 == 1;
  for (const auto& u : x)
    if (!u.empty() && (u.size() % 2 == 0 || u.front().factor() != y.front().factor())) same_odd_type = false;

  const Word& bar = r.decomposition->period;
  std::vector<Word> firsts;
  for (auto [i, j] : *widest) firsts.push_back(x[i]);
  std::vector<Word> patterns;
  if (!same_odd_type) {
    patterns.push_back(bar);
  } else {
    const Word& g = r.decomposition->g;
    const Word tail = fp.multiply(bar, fp.inverse(g));
    patterns.push_back(tail);
    for (const auto& u : firsts)
      if (!u.empty()) {
        const Word parts[] = {Word({u.back()}), g, tail};
        patterns.push_back(fp.multiply(parts));
      }
  }
  for (const auto& u : firsts)
    for (const auto& p : patterns)
      if (!p.empty() && ends_with(u, p)) r.suffix_evidence = true;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Certificate> classification_certificate(const WordSet& a, std::vector<TraceStep>& trace) {
  const SubgroupClass cls = classify_subgroup(a);
  if (cls.kind == SubgroupKind::other) {
    note(&trace, "classification", "no cyclic, dihedral or factor structure found");
    return std::nullopt;
  }
  if (auto err = verify_classification(a, cls)) {
    note(&trace, "classification", "witness rejected: " + *err);
    return std::nullopt;
  }
  note(&trace, "classification", std::string(to_string(cls.kind)));
  Certificate c;
  if (cls.kind == SubgroupKind::factor_conjugate) {
    c.kind = CertificateKind::factor_conjugate;
    c.conjugator = cls.conjugator;
    c.factor = cls.factor;
  } else {
    c.kind = CertificateKind::structure;
    c.classification = cls;
    c.period = cls.root;
  }
  return c;
}

}  // namespace

Certificate dichotomy(const WordSet& a, const DichotomyOptions& opts) {
  const FreeProduct& fp = a.group();
  if (fp.factor_count() != 2) throw std::invalid_argument("the dichotomy needs a two-factor free product");
  std::vector<TraceStep> trace;
  const std::size_t n = a.size();
  auto done = [&](Certificate c) {
    c.trace = trace;
    return c;
  };

  if (n < opts.small_set) {
    note(&trace, "small-set", "direct enumeration of A^3 with classification", {{"A", ssize(n)}});
    if (auto c = classification_certificate(a, trace)) return done(*c);
    WitnessBuilder builder(fp, Word{});
    auto witness = builder.build(a.words(), a.words(), a.words());
    note(&trace, "small-set", "A^3 enumerated", {{"A3", ssize(witness.size())}}, &kTripleConstant);
    return done(growth_certificate(std::move(witness), kTripleConstant));
  }

  XYWitness w = extract_xy(a);
  note(&trace, "xy-extraction", w.branch,
       {{"A", ssize(n)}, {"X", ssize(w.x.size())}, {"Y", ssize(w.y.size())}, {"conjugator-length", ssize(w.conjugator.size())},
        {"dihedral-edge", w.dihedral_edge ? 1 : 0}});
  if (!w.x.empty() && !w.y.empty()) {
    w = order_xy(w);
    note(&trace, "median-split", "X short half, Y long half", {{"X", ssize(w.x.size())}, {"Y", ssize(w.y.size())}});
    auto d = short_word_dispatch(w, a, &trace);
    if (auto* c = std::get_if<Certificate>(&d)) return done(std::move(*c));
    w = std::get<XYWitness>(std::move(d));
  }

  const WordSet& ap = w.conjugated;
  WitnessBuilder builder(fp, w.conjugator);
  std::vector<Word> xs(w.x.begin(), w.x.end()), ys(w.y.begin(), w.y.end());

  if (!xs.empty() && !ys.empty()) {
    // Fiber bound: F_y at most 2-to-1 gives |X|^2 / 2.
    std::size_t best = 0, tried = 0;
    for (const auto& y : ys) {
      if (opts.fiber_candidates && tried == opts.fiber_candidates) break;
      ++tried;
      const std::size_t img = count_fixed_middle(fp, xs, y, xs);
      best = std::max(best, img);
      if (meets(img, kFiberConstant, n)) {
        const Word mids[] = {y};
        auto witness = builder.build(xs, mids, xs);
        note(&trace, "fiber-bound", "F_y image meets the constant", {{"image", ssize(witness.size())}, {"tried", ssize(tried)}},
             &kFiberConstant);
        return done(growth_certificate(std::move(witness), kFiberConstant));
      }
    }
    note(&trace, "fiber-bound", "no F_y image large enough", {{"best", ssize(best)}, {"tried", ssize(tried)}}, &kFiberConstant);

    std::vector<Word> xy;
    count_products(fp, xs, ys, &xy);
    const std::size_t xyx = count_products(fp, xy, xs);
    if (meets(xyx, kTripleConstant, n)) {
      auto witness = builder.build(xs, ys, xs);
      note(&trace, "xyx", "|XYX| meets the constant", {{"XYX", ssize(witness.size())}}, &kTripleConstant);
      return done(growth_certificate(std::move(witness), kTripleConstant));
    }
    note(&trace, "xyx", "|XYX| below the constant", {{"XYX", ssize(xyx)}}, &kTripleConstant);

    std::vector<Word> yy;
    count_products(fp, ys, ys, &yy);
    const std::size_t y3 = count_products(fp, yy, ys);
    if (meets(y3, kSquareConstant, n)) {
      auto witness = builder.build(ys, ys, ys);
      note(&trace, "y-cube", "|Y^3| meets the constant", {{"Y3", ssize(witness.size())}}, &kSquareConstant);
      return done(growth_certificate(std::move(witness), kSquareConstant));
    }
    note(&trace, "y-cube", "|Y^3| below the constant", {{"Y3", ssize(y3)}}, &kSquareConstant);

    // |YaY| = |Y|^2 for some a in A' or a = identity.
    if (meets(ys.size() * ys.size(), kSquareConstant, n)) {
      std::vector<const Word*> mids;
      const Word identity;
      mids.push_back(&identity);
      for (const auto& el : ap) mids.push_back(&el);
      for (const Word* mid : mids) {
        if (count_fixed_middle(fp, ys, *mid, ys) != ys.size() * ys.size()) continue;
        std::vector<WitnessProduct> witness;
        if (!mid->empty() || ap.contains(*mid)) {
          const Word m[] = {*mid};
          witness = builder.build(ys, m, ys);
        } else {
          const Word last[] = {ys.front()};
          witness = builder.build(ys, ys, last);
        }
        note(&trace, "yay", mid->empty() ? "|Y Y| = |Y|^2" : "|Y a Y| = |Y|^2", {{"YaY", ssize(witness.size())}},
             &kSquareConstant);
        return done(growth_certificate(std::move(witness), kSquareConstant));
      }
      note(&trace, "yay", "every a in A and the identity has |YaY| < |Y|^2");
    } else {
      note(&trace, "yay", "Y too small after filtering", {{"Y", ssize(ys.size())}});
    }
  }

  if (auto c = classification_certificate(a, trace)) {
    if (!ys.empty())
      if (auto d = period_decompose(ys.front())) {
        c->period = d->period;
        c->tail = d->tail;
      }
    return done(*c);
  }
  throw AnalysisIncomplete("no branch of the dichotomy closed", trace);
}

}  // namespace fpg

#include "fpg/subgroup.hpp"

#include <algorithm>

namespace fpg {

std::string_view to_string(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::infinite_cyclic: return "infinite-cyclic";
    case SubgroupKind::infinite_dihedral: return "infinite-dihedral";
    case SubgroupKind::factor_conjugate: return "factor-conjugate";
    case SubgroupKind::finite_cyclic: return "finite-cyclic";
    case SubgroupKind::other: return "other";
  }
  return "?";
}

SubgroupKind parse_subgroup_kind(std::string_view s) {
  for (auto k : {SubgroupKind::infinite_cyclic, SubgroupKind::infinite_dihedral, SubgroupKind::factor_conjugate,
                 SubgroupKind::finite_cyclic, SubgroupKind::other})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown subgroup class '" + std::string(s) + "'");
}

bool conjugates_into_factor(const FreeProduct& fp, const Word& conjugator, std::size_t factor, const Word& a) {
  const Word c = conjugate(fp, fp.inverse(conjugator), a);
  return c.empty() || (c.size() == 1 && c.front().factor() == factor);
}

namespace {

bool all_powers_of(const FreeProduct& fp, const WordSet& a, const Word& root) {
  return std::all_of(a.begin(), a.end(), [&](const Word& w) { return power_index(fp, w, root).has_value(); });
}

bool dihedral_fits(const FreeProduct& fp, const WordSet& a, const Word& rotation) {
  const Word inv = fp.inverse(rotation);
  return std::all_of(a.begin(), a.end(), [&](const Word& w) {
    if (power_index(fp, w, rotation)) return true;
    return word_order(fp, w) == std::optional<std::uint64_t>{2} && conjugate(fp, w, rotation) == inv;
  });
}

SubgroupClass cyclic_class(const FreeProduct& fp, const Word& root) {
  SubgroupClass c;
  c.root = root;
  if (auto ord = word_order(fp, root)) {
    c.kind = SubgroupKind::finite_cyclic;
    c.order = *ord;
  } else {
    c.kind = SubgroupKind::infinite_cyclic;
  }
  return c;
}

}  // namespace

SubgroupClass classify_subgroup(const WordSet& a) {
  const FreeProduct& fp = a.group();
  std::vector<const Word*> nontrivial;
  for (const auto& w : a)
    if (!w.empty()) nontrivial.push_back(&w);
  if (nontrivial.empty()) {
    SubgroupClass c;
    c.kind = SubgroupKind::finite_cyclic;
    c.order = 1;
    return c;
  }

  // (a) Literally inside one factor: let the factor decide cyclicity first.
  const std::size_t f0 = nontrivial.front()->front().factor();
  const bool literal = std::all_of(nontrivial.begin(), nontrivial.end(),
                                   [&](const Word* w) { return w->size() == 1 && w->front().factor() == f0; });
  if (literal) {
    std::vector<Element> elems;
    for (const Word* w : nontrivial) elems.push_back(w->front().element());
    if (auto gen = fp.factor(f0).cyclic_generator(elems)) {
      SubgroupClass c = cyclic_class(fp, fp.letter(f0, *gen));
      if (all_powers_of(fp, a, c.root)) return c;
    }
    SubgroupClass c;
    c.kind = SubgroupKind::factor_conjugate;
    c.factor = f0;
    return c;
  }

  // (b) Conjugate into a factor through the first element's cyclic reduction.
  {
    const auto cr = cyclic_reduce(fp, *nontrivial.front());
    if (cr.core.size() == 1) {
      const std::size_t f = cr.core.front().factor();
      if (std::all_of(a.begin(), a.end(), [&](const Word& w) { return conjugates_into_factor(fp, cr.conjugator, f, w); })) {
        SubgroupClass c;
        c.kind = SubgroupKind::factor_conjugate;
        c.conjugator = cr.conjugator;
        c.factor = f;
        return c;
      }
    }
  }

  // (c) Cyclic.
  std::vector<Word> infinite, involutions;
  for (const Word* w : nontrivial) {
    const Order ord = word_order(fp, *w);
    if (!ord) infinite.push_back(*w);
    else if (*ord == 2) involutions.push_back(*w);
  }
  if (!infinite.empty()) {
    const Word root = primitive_root(fp, infinite.front()).root;
    if (all_powers_of(fp, a, root)) return cyclic_class(fp, root);
  } else {
    for (const Word* cand : nontrivial)
      if (all_powers_of(fp, a, *cand)) return cyclic_class(fp, *cand);
  }

  // (d) Infinite dihedral: rotation from a product of two involutions, or the
  // primitive root of an infinite-order element.
  if (!involutions.empty()) {
    std::vector<Word> rotations;
    for (std::size_t i = 0; i < involutions.size(); ++i)
      for (std::size_t j = i + 1; j < involutions.size(); ++j) {
        const Word p = fp.multiply(involutions[i], involutions[j]);
        if (!p.empty() && !word_order(fp, p)) rotations.push_back(primitive_root(fp, p).root);
      }
    for (const auto& w : infinite) rotations.push_back(primitive_root(fp, w).root);
    for (const auto& r : rotations) {
      if (dihedral_fits(fp, a, r)) {
        SubgroupClass c;
        c.kind = SubgroupKind::infinite_dihedral;
        c.root = r;
        c.reflection = involutions.front();
        return c;
      }
    }
  }
  return {};
}

std::optional<std::string> verify_classification(const WordSet& a, const SubgroupClass& c) {
  const FreeProduct& fp = a.group();
  auto name = [&](const Word& w) { return fp.describe(w); };
  switch (c.kind) {
    case SubgroupKind::other:
      return std::nullopt;
    case SubgroupKind::factor_conjugate:
      if (c.factor >= fp.factor_count()) return "factor index out of range";
      for (const auto& w : a)
        if (!conjugates_into_factor(fp, c.conjugator, c.factor, w))
          return "element " + name(w) + " does not conjugate into factor " + std::to_string(c.factor);
      return std::nullopt;
    case SubgroupKind::infinite_cyclic:
    case SubgroupKind::finite_cyclic: {
      const Order ord = word_order(fp, c.root);
      if (c.kind == SubgroupKind::infinite_cyclic && ord) return "root " + name(c.root) + " has finite order";
      if (c.kind == SubgroupKind::finite_cyclic && (!ord || *ord != c.order))
        return "root " + name(c.root) + " does not have order " + std::to_string(c.order);
      for (const auto& w : a)
        if (!power_index(fp, w, c.root)) return "element " + name(w) + " is not a power of " + name(c.root);
      return std::nullopt;
    }
    case SubgroupKind::infinite_dihedral: {
      if (word_order(fp, c.root)) return "rotation " + name(c.root) + " has finite order";
      if (word_order(fp, c.reflection) != std::optional<std::uint64_t>{2}) return "reflection is not an involution";
      if (conjugate(fp, c.reflection, c.root) != fp.inverse(c.root)) return "reflection does not invert the rotation";
      if (!dihedral_fits(fp, a, c.root)) {
        for (const auto& w : a) {
          WordSet one(a.ambient(), {w});
          if (!dihedral_fits(fp, one, c.root)) return "element " + name(w) + " is neither a rotation nor a reflection";
        }
      }
      return std::nullopt;
    }
  }
  return "unknown class";
}

}  // namespace fpg

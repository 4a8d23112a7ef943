#include "fpg/families.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "fpg/sl2.hpp"

namespace fpg {

std::string family_csv_header() { return "family,params,size,sq,cube,bound,ok,notes"; }

std::string family_csv_row(const FamilyReport& r) {
  std::string notes;
  for (const auto& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
  return r.family + "," + r.params + "," + std::to_string(r.size) + "," + std::to_string(r.sq) + "," +
         std::to_string(r.cube) + "," + to_string(r.bound) + "," + (r.ok ? "true" : "false") + "," + notes;
}

namespace {

Rational rat(std::int64_t v) { return Rational(v); }
Rational rat(std::size_t v) { return Rational(static_cast<std::int64_t>(v)); }

void fill_sizes(FamilyReport& r, const WordSet& a) {
  const GrowthSizes s = growth_sizes(a);
  r.size = s.set_size;
  r.sq = s.sq;
  r.cube = s.cube;
}

}  // namespace

// ---------------------------------------------------------------------------

FamilyResult family_powers(const FreeProductPtr& g, const std::vector<Word>& gens, const Word& x, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  if (x.empty() || word_order(*g, x)) throw std::invalid_argument("x must have infinite order");
  std::vector<Word> words = gens;
  for (std::int64_t i = 1; i <= n; ++i) words.push_back(g->power(x, i));
  FamilyResult out{WordSet(g, std::move(words)), {}};
  FamilyReport& r = out.report;
  const auto l = static_cast<std::int64_t>(gens.size());
  r.family = "powers";
  r.params = "l=" + std::to_string(l) + " N=" + std::to_string(n);
  fill_sizes(r, out.set);
  const Rational sq_bound = rat(2 * (l + 1) * n - 2 + l * l);
  const Rational cube_bound = rat(2 * (l + 1) * n * (n + l) + l * l * (n + l));
  r.bound = sq_bound;
  const bool sq_ok = rat(r.sq) <= sq_bound;
  const bool cube_ok = rat(r.cube) <= cube_bound;
  r.ok = sq_ok && cube_ok;
  r.notes.push_back("cube bound " + to_string(cube_bound) + (cube_ok ? " met" : " exceeded"));
  if (!sq_ok) r.notes.push_back("|A^2| exceeds 2(l+1)N-2+l^2 by " + to_string(rat(r.sq) - sq_bound));
  return out;
}

std::size_t powers_middle_count(const FreeProduct& fp, const Word& x, const Word& g, std::int64_t n) {
  std::vector<Word> left, right;
  for (std::int64_t i = 1; i <= n; ++i) {
    left.push_back(fp.multiply(fp.power(x, i), g));
    right.push_back(fp.power(x, i));
  }
  return count_products(fp, left, right);
}

// ---------------------------------------------------------------------------

GroupSpec f2xz_group() {
  const nlohmann::json doc{{"kind", "direct-product-with-integers"},
                           {"params", {{"base", free_product_doc({integers_doc("x"), integers_doc("y")})}, {"z", "z"}}}};
  return load_group(doc);
}

FamilyResult family_f2xz(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  const GroupSpec spec = f2xz_group();
  const FreeProduct& fp = spec.group();
  const Word x = fp.generator("x"), y = fp.generator("y"), z = fp.generator("z");
  std::vector<Word> words;
  for (std::int64_t i = 0; i < n; ++i) {
    words.push_back(fp.multiply(x, fp.power(z, i)));
    words.push_back(fp.multiply(y, fp.power(z, i)));
  }
  FamilyResult out{WordSet(spec.ambient, std::move(words)), {}};
  FamilyReport& r = out.report;
  r.family = "f2xz";
  r.params = "N=" + std::to_string(n);
  fill_sizes(r, out.set);
  r.bound = rat(4 * r.size);
  const std::size_t expected_cube = static_cast<std::size_t>(8 * (3 * n - 2));
  r.ok = rat(r.sq) < r.bound && r.cube == expected_cube;
  if (r.cube != expected_cube) r.notes.push_back("|A^3| differs from 8(3N-2) = " + std::to_string(expected_cube));
  if (r.cube >= 8 * r.size)
    r.notes.push_back("|A^3| = " + std::to_string(r.cube) + " is not below 8|A| = " + std::to_string(8 * r.size));
  return out;
}

// ---------------------------------------------------------------------------

GroupSpec bs_group(std::int64_t m, std::int64_t n) {
  if (m == 0 || n == 0) throw std::invalid_argument("BS(m,n) needs m, n nonzero");
  if ((m == 1 || m == -1) && (n == 1 || n == -1))
    throw std::invalid_argument("BS(+-1,+-1) is virtually abelian and excluded");
  return load_group({{"kind", "baumslag-solitar"}, {"params", {{"m", m}, {"n", n}}}});
}

FamilyResult family_bs(std::int64_t m, std::int64_t n, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("d must be at least 1");
  const GroupSpec spec = bs_group(m, n);
  const FreeProduct& fp = spec.group();
  const Word x = fp.generator("x");
  std::vector<Word> words{fp.generator("y")};
  for (std::int64_t i = 1; i <= d; ++i) words.push_back(fp.power(x, i));
  FamilyResult out{WordSet(spec.ambient, std::move(words)), {}};
  FamilyReport& r = out.report;
  r.family = "bs";
  r.params = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " d=" + std::to_string(d);
  fill_sizes(r, out.set);
  r.bound = rat((10 + std::abs(m) + std::abs(n)) * (d + 1));
  r.ok = rat(r.cube) < r.bound;
  if (m == 1 && n == 4) {
    const Rational fifteen = rat(15 * (d + 1));
    const bool below = rat(r.cube) < fifteen;
    r.ok = r.ok && below;
    r.notes.push_back(std::string("|A_d^3| ") + (below ? "< " : ">= ") + to_string(fifteen) + " = 15|A_d|");
  }
  return out;
}

std::size_t bs_control_count(std::int64_t m, std::int64_t n, std::int64_t d) {
  const GroupSpec spec = bs_group(m, n);
  const FreeProduct& fp = spec.group();
  const Word x = fp.generator("x"), y = fp.generator("y");
  std::vector<Word> left, right;
  for (std::int64_t i = 1; i <= d; ++i) {
    left.push_back(fp.multiply(fp.power(x, i), y));
    right.push_back(fp.power(x, i));
  }
  return count_products(fp, left, right);
}

// ---------------------------------------------------------------------------

GroupSpec psl2_group() { return load_group(free_product_doc({cyclic_doc(2, "s"), cyclic_doc(3, "t")})); }

Word sl2_to_psl2_word(const FreeProduct& psl2, const Matrix2& m) {
  if (m.det() != 1) throw std::invalid_argument("matrix determinant is not 1");
  const sl2::Decomposition d = sl2::decompose(m);
  const Word s = psl2.generator("s");
  const Word st = psl2.multiply(s, psl2.generator("t"));  // maps to S*S*T = -T
  Word w;
  for (const auto& [kind, k] : d.factors) w = psl2.multiply(w, psl2.power(kind == 'S' ? s : st, k));
  return w;
}

Matrix2 evaluate_psl2_word(const FreeProduct& psl2, const Word& w) {
  const Matrix2 s = sl2::S(), t = sl2::S() * sl2::T();
  Matrix2 out = Matrix2::identity();
  for (const Letter& l : w) {
    const Matrix2& base = l.factor() == 0 ? s : t;
    for (std::int64_t i = 0; i < l.element().value; ++i) out = out * base;
  }
  (void)psl2;
  return out;
}

namespace {

Matrix2 negate(const Matrix2& m) { return {-m.a, -m.b, -m.c, -m.d}; }

using MatrixSet = std::unordered_set<Matrix2, Matrix2Hash>;

MatrixSet cube_of(const std::vector<Matrix2>& a) {
  MatrixSet out;
  for (const auto& p : a)
    for (const auto& q : a) {
      const Matrix2 pq = p * q;
      for (const auto& r : a) out.insert(pq * r);
    }
  return out;
}

std::vector<Matrix2> matrices_of(const WordSet& a) {
  const FreeProduct& fp = a.group();
  const auto* grp = dynamic_cast<const Sl2zGroup*>(&fp.factor(0));
  if (fp.factor_count() != 1 || !grp) throw std::invalid_argument("quotient check needs a one-factor SL(2,Z) group");
  std::vector<Matrix2> out;
  for (const auto& w : a) out.push_back(w.empty() ? Matrix2::identity() : grp->matrix(w.front().element()));
  return out;
}

}  // namespace

QuotientReport quotient_check(const WordSet& a) {
  static const GroupSpec psl2 = psl2_group();
  const std::vector<Matrix2> mats = matrices_of(a);
  QuotientReport r;
  r.size = a.size();

  std::vector<Word> image;
  for (const auto& m : mats) image.push_back(sl2_to_psl2_word(psl2.group(), m));
  const WordSet pi(psl2.ambient, std::move(image));
  r.image_size = pi.size();
  r.image_half = 2 * r.image_size >= r.size;

  const MatrixSet a3 = cube_of(mats);
  r.cube = a3.size();
  MatrixSet a3n = a3;
  for (const auto& m : a3) a3n.insert(negate(m));
  std::vector<Matrix2> an = mats;
  for (const auto& m : mats) an.push_back(negate(m));
  {
    MatrixSet seen;
    std::vector<Matrix2> dedup;
    for (const auto& m : an)
      if (seen.insert(m).second) dedup.push_back(m);
    an = std::move(dedup);
  }
  r.cube_identity = cube_of(an) == a3n;
  r.cube_n = a3n.size();

  std::vector<Word> pi2;
  count_products(psl2.group(), pi.words(), pi.words(), &pi2);
  r.image_cube = count_products(psl2.group(), pi2, pi.words());
  r.count_identity = r.cube_n == 2 * r.image_cube;

  r.bound = kQuotientConstant * Rational(static_cast<std::int64_t>(r.size * r.size));
  r.bound_met = Rational(static_cast<std::int64_t>(r.cube)) >= r.bound;
  r.image_class = classify_subgroup(pi);
  r.exempt = r.image_class.kind != SubgroupKind::other && !verify_classification(pi, r.image_class);
  return r;
}

FamilyReport quotient_family_report(const WordSet& a, const std::string& params) {
  const QuotientReport q = quotient_check(a);
  FamilyReport r;
  r.family = "sl2z-quotient";
  r.params = params;
  r.size = q.size;
  r.sq = count_products(a.group(), a.words(), a.words());
  r.cube = q.cube;
  r.bound = q.bound;
  r.ok = q.ok();
  r.notes.push_back("|pi(A)|=" + std::to_string(q.image_size));
  r.notes.push_back("|pi(A)^3|=" + std::to_string(q.image_cube));
  if (!q.cube_identity) r.notes.push_back("(AN)^3 != A^3 N");
  if (!q.count_identity) r.notes.push_back("|A^3 N| != 2|pi(A)^3|");
  if (!q.bound_met) r.notes.push_back(q.exempt ? "exempt: pi(A) " + std::string(to_string(q.image_class.kind)) : "bound missed");
  return r;
}

// ---------------------------------------------------------------------------

WordSet word_ball(const FreeProductPtr& g, int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");
  const FreeProduct& fp = *g;
  std::vector<Word> steps;
  std::unordered_set<Word, WordHash> step_seen;
  for (const auto& gen : fp.generators()) {
    const Word w = fp.generator(gen.name);
    for (const Word& v : {w, fp.inverse(w)})
      if (!v.empty() && step_seen.insert(v).second) steps.push_back(v);
  }
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> all{Word{}}, frontier{Word{}};
  for (int r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& s : steps) {
        Word v = fp.multiply(w, s);
        if (seen.insert(v).second) {
          all.push_back(v);
          next.push_back(std::move(v));
        }
      }
    frontier = std::move(next);
  }
  return WordSet(g, std::move(all));
}

namespace {

/// Uniform in [0, bound) by rejection, so results do not depend on the
/// standard library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    const std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

}  // namespace

WordSet sample_from(const WordSet& pool, std::size_t size, std::uint64_t seed) {
  if (size > pool.size())
    throw std::invalid_argument("requested " + std::to_string(size) + " elements from a pool of " + std::to_string(pool.size()));
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < size; ++i) std::swap(idx[i], idx[i + bounded(rng, idx.size() - i)]);
  std::vector<Word> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(pool[idx[i]]);
  return WordSet(pool.ambient(), std::move(out));
}

WordSet sample_ball(const FreeProductPtr& g, int radius, std::size_t size, std::uint64_t seed) {
  return sample_from(word_ball(g, radius), size, seed);
}

}  // namespace fpg

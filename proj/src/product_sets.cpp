#include "fpg/product_sets.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

namespace fpg {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(std::stoll(std::string(text)));
    return Rational(std::stoll(std::string(text.substr(0, slash))), std::stoll(std::string(text.substr(slash + 1))));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational '" + std::string(text) + "'");
  }
}

// ---------------------------------------------------------------------------

WordSet::WordSet(FreeProductPtr ambient, std::vector<Word> words) : ambient_(std::move(ambient)) {
  std::vector<std::string> enc;
  enc.reserve(words.size());
  for (const auto& w : words) enc.push_back(canonical_encode(*ambient_, w));
  std::vector<std::size_t> order(words.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return enc[i] < enc[j]; });
  for (std::size_t k : order) {
    if (!encodings_.empty() && encodings_.back() == enc[k]) continue;
    encodings_.push_back(std::move(enc[k]));
    words_.push_back(std::move(words[k]));
  }
}

std::optional<std::size_t> WordSet::index_of(const Word& w) const {
  const std::string e = canonical_encode(*ambient_, w);
  auto it = std::lower_bound(encodings_.begin(), encodings_.end(), e);
  if (it == encodings_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - encodings_.begin());
}

bool WordSet::contains(const Word& w) const { return index_of(w).has_value(); }

WordSet parse_word_set(const FreeProductPtr& ambient, std::string_view text) {
  std::vector<Word> words;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      words.push_back(ambient->parse(line));
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (words.empty()) throw ParseError("empty set");
  return WordSet(ambient, std::move(words));
}

WordSet read_word_set(const FreeProductPtr& ambient, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open set file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_word_set(ambient, buf.str());
}

std::string format_word_set(const WordSet& a) {
  std::string out;
  for (const auto& w : a) out += a.group().format(w) + "\n";
  return out;
}

void check_same_ambient(const WordSet& a, const WordSet& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient mismatch");
}

// ---------------------------------------------------------------------------
// Lazy product counting.

namespace {

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBase = 0x1d6b2c93a5f4e87ULL % kMod;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const __uint128_t p = static_cast<__uint128_t>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
  return r >= kMod ? r - kMod : r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kMod ? r - kMod : r;
}

std::uint64_t letter_value(Letter l) {
  std::uint64_t z = l.bits() + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z % (kMod - 1) + 1;
}

struct Descriptor {
  std::uint32_t l, r;  // operand indices
  std::uint32_t i, j;  // keep left[0, i), right[j, end)
  std::uint64_t merged;  // letter bits, 0 when no absorption
  std::uint64_t hash;
  std::uint32_t len;
};

class ProductTable {
 public:
  ProductTable(std::span<const Word> left, std::span<const Word> right) : left_(left), right_(right) {
    std::size_t max_len = 0;
    pre_off_.reserve(left.size() + 1);
    for (const auto& w : left) {
      pre_off_.push_back(pre_.size());
      std::uint64_t h = 0;
      pre_.push_back(h);
      for (Letter l : w) pre_.push_back(h = addmod(mulmod(h, kBase), letter_value(l)));
      max_len = std::max(max_len, w.size());
    }
    std::size_t max_right = 0;
    for (const auto& w : right) max_right = std::max(max_right, w.size());
    pow_.assign(max_len + max_right + 2, 1);
    for (std::size_t k = 1; k < pow_.size(); ++k) pow_[k] = mulmod(pow_[k - 1], kBase);
    for (const auto& w : right) {
      suf_off_.push_back(suf_.size());
      std::vector<std::uint64_t> s(w.size() + 1, 0);
      for (std::size_t j = w.size(); j-- > 0;) s[j] = addmod(mulmod(letter_value(w[j]), pow_[w.size() - 1 - j]), s[j + 1]);
      suf_.insert(suf_.end(), s.begin(), s.end());
    }
    slots_.assign(1024, kEmpty);
  }

  void add(const FreeProduct& fp, std::uint32_t li, std::uint32_t ri) {
    const Word& L = left_[li];
    const Word& R = right_[ri];
    const auto jn = fp.junction(L.letters(), R.letters());
    const std::size_t drop = jn.cancelled + (jn.absorbed ? 1 : 0);
    Descriptor d;
    d.l = li;
    d.r = ri;
    d.i = static_cast<std::uint32_t>(L.size() - drop);
    d.j = static_cast<std::uint32_t>(drop);
    d.merged = jn.absorbed ? jn.merged.bits() : 0;
    const std::uint32_t mid = jn.absorbed ? 1 : 0;
    const std::uint32_t tail = static_cast<std::uint32_t>(R.size()) - d.j;
    d.len = d.i + mid + tail;
    std::uint64_t h = pre_[pre_off_[li] + d.i];
    if (jn.absorbed) h = addmod(mulmod(h, kBase), letter_value(jn.merged));
    h = addmod(mulmod(h, pow_[tail]), suf_[suf_off_[ri] + d.j]);
    d.hash = h;
    insert(d);
  }

  std::size_t size() const { return descs_.size(); }

  std::vector<Word> materialize() const {
    std::vector<Word> out;
    out.reserve(descs_.size());
    for (const auto& d : descs_) {
      std::vector<Letter> letters;
      letters.reserve(d.len);
      for (std::uint32_t k = 0; k < d.len; ++k) letters.push_back(letter_at(d, k));
      out.emplace_back(std::move(letters));
    }
    return out;
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  Letter letter_at(const Descriptor& d, std::uint32_t k) const {
    if (k < d.i) return left_[d.l][k];
    if (d.merged) {
      if (k == d.i) return std::bit_cast<Letter>(d.merged);
      return right_[d.r][d.j + k - d.i - 1];
    }
    return right_[d.r][d.j + k - d.i];
  }

  /// Up to three contiguous runs: left prefix, merged letter, right suffix.
  /// The caller points part[1] at its own copy of the merged letter.
  struct Runs {
    std::array<std::span<const Letter>, 3> part;
    Letter merged;
  };

  Runs runs(const Descriptor& d) const {
    Runs r;
    r.part[0] = left_[d.l].letters().subspan(0, d.i);
    if (d.merged) r.merged = std::bit_cast<Letter>(d.merged);
    r.part[2] = right_[d.r].letters().subspan(d.j);
    return r;
  }

  bool same(const Descriptor& a, const Descriptor& b) const {
    if (a.len != b.len) return false;
    Runs ra = runs(a), rb = runs(b);
    if (a.merged) ra.part[1] = std::span<const Letter>(&ra.merged, 1);
    if (b.merged) rb.part[1] = std::span<const Letter>(&rb.merged, 1);
    std::size_t pa = 0, pb = 0, oa = 0, ob = 0;
    while (true) {
      while (pa < 3 && oa == ra.part[pa].size()) ++pa, oa = 0;
      while (pb < 3 && ob == rb.part[pb].size()) ++pb, ob = 0;
      if (pa == 3 || pb == 3) return pa == pb;
      const std::size_t n = std::min(ra.part[pa].size() - oa, rb.part[pb].size() - ob);
      if (std::memcmp(ra.part[pa].data() + oa, rb.part[pb].data() + ob, n * sizeof(Letter)) != 0) return false;
      oa += n;
      ob += n;
    }
  }

  void insert(const Descriptor& d) {
    if (2 * (descs_.size() + 1) > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t pos = d.hash & mask;; pos = (pos + 1) & mask) {
      const std::uint32_t s = slots_[pos];
      if (s == kEmpty) {
        slots_[pos] = static_cast<std::uint32_t>(descs_.size());
        descs_.push_back(d);
        return;
      }
      if (descs_[s].hash == d.hash && same(descs_[s], d)) return;
    }
  }

  void grow() {
    std::vector<std::uint32_t> fresh(slots_.size() * 2, kEmpty);
    const std::size_t mask = fresh.size() - 1;
    for (std::uint32_t k = 0; k < descs_.size(); ++k) {
      std::size_t pos = descs_[k].hash & mask;
      while (fresh[pos] != kEmpty) pos = (pos + 1) & mask;
      fresh[pos] = k;
    }
    slots_ = std::move(fresh);
  }

  std::span<const Word> left_, right_;
  std::vector<std::uint64_t> pre_, suf_, pow_;
  std::vector<std::size_t> pre_off_, suf_off_;
  std::vector<Descriptor> descs_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace

std::size_t count_products(const FreeProduct& fp, std::span<const Word> left, std::span<const Word> right,
                           std::vector<Word>* distinct) {
  ProductTable table(left, right);
  for (std::uint32_t i = 0; i < left.size(); ++i)
    for (std::uint32_t j = 0; j < right.size(); ++j) table.add(fp, i, j);
  if (distinct) *distinct = table.materialize();
  return table.size();
}

WordSet product(const WordSet& a, const WordSet& b) {
  check_same_ambient(a, b);
  std::vector<Word> words;
  count_products(a.group(), a.words(), b.words(), &words);
  return WordSet(a.ambient(), std::move(words));
}

WordSet power_set(const WordSet& a, int n) {
  if (n < 1) throw std::invalid_argument("power_set needs n >= 1");
  WordSet acc = a;
  for (int k = 1; k < n; ++k) acc = product(acc, a);
  return acc;
}

WordSet conjugate(const WordSet& a, const Word& gamma) {
  std::vector<Word> words;
  words.reserve(a.size());
  for (const auto& w : a) words.push_back(conjugate(a.group(), gamma, w));
  return WordSet(a.ambient(), std::move(words));
}

GrowthSizes growth_sizes(const WordSet& a) {
  GrowthSizes s;
  s.set_size = a.size();
  std::vector<Word> sq;
  s.sq = count_products(a.group(), a.words(), a.words(), &sq);
  s.cube = count_products(a.group(), sq, a.words());
  return s;
}

// ---------------------------------------------------------------------------

namespace {

struct CoverSearch {
  std::vector<boost::dynamic_bitset<>> covers;
  std::vector<std::vector<std::size_t>> covering;  // element -> candidates containing it, ascending
  std::size_t universe = 0, max_cover = 1;
  std::vector<std::size_t> best, chosen;

  void run(const boost::dynamic_bitset<>& covered) {
    if (covered.all()) {
      if (chosen.size() < best.size()) best = chosen;
      return;
    }
    const std::size_t missing = universe - covered.count();
    const std::size_t lower = chosen.size() + (missing + max_cover - 1) / max_cover;
    if (lower >= best.size()) return;
    const std::size_t e = (~covered).find_first();
    for (std::size_t c : covering[e]) {
      chosen.push_back(c);
      run(covered | covers[c]);
      chosen.pop_back();
    }
  }
};

}  // namespace

TranslateCover min_translate_cover(const WordSet& a, std::size_t exact_limit) {
  const FreeProduct& fp = a.group();
  const WordSet sq = product(a, a);
  std::unordered_map<Word, std::size_t, WordHash> sq_index;
  for (std::size_t i = 0; i < sq.size(); ++i) sq_index.emplace(sq[i], i);

  std::vector<Word> inverses;
  for (const auto& w : a) inverses.push_back(fp.inverse(w));
  std::vector<Word> cand_words;
  for (const auto& u : sq)
    for (const auto& ai : inverses) cand_words.push_back(fp.multiply(u, ai));
  const WordSet cands(a.ambient(), std::move(cand_words));

  CoverSearch search;
  search.universe = sq.size();
  search.covering.resize(sq.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    boost::dynamic_bitset<> bits(sq.size());
    for (const auto& w : a) {
      auto it = sq_index.find(fp.multiply(cands[c], w));
      if (it != sq_index.end()) bits.set(it->second);
    }
    search.max_cover = std::max(search.max_cover, bits.count());
    for (auto e = bits.find_first(); e != boost::dynamic_bitset<>::npos; e = bits.find_next(e))
      search.covering[e].push_back(c);
    search.covers.push_back(std::move(bits));
  }

  // Greedy first; it is also the initial bound for the exact search.
  boost::dynamic_bitset<> covered(sq.size());
  std::vector<std::size_t> greedy;
  while (!covered.all()) {
    std::size_t best_c = 0, best_gain = 0;
    for (std::size_t c = 0; c < search.covers.size(); ++c) {
      const std::size_t gain = (search.covers[c] - covered).count();
      if (gain > best_gain) {
        best_gain = gain;
        best_c = c;
      }
    }
    greedy.push_back(best_c);
    covered |= search.covers[best_c];
  }

  TranslateCover out;
  std::vector<std::size_t> pick = greedy;
  if (sq.size() <= exact_limit) {
    search.best = greedy;
    search.run(boost::dynamic_bitset<>(sq.size()));
    pick = search.best;
    out.exact = true;
  }
  std::vector<Word> xs;
  for (std::size_t c : pick) xs.push_back(cands[c]);
  out.x = WordSet(a.ambient(), std::move(xs));
  out.k = out.x.size();
  return out;
}

bool cover_validates(const WordSet& a, const WordSet& x) {
  const WordSet sq = product(a, a);
  const WordSet xa = product(x, a);
  return std::all_of(sq.begin(), sq.end(), [&](const Word& w) { return xa.contains(w); });
}

}  // namespace fpg

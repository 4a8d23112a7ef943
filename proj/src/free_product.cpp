#include "fpg/free_product.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fpg {

Letter::Letter(std::size_t factor, Element e) {
  if (factor > 0xff) throw std::overflow_error("too many factors");
  if (e.value > max_value || e.value < min_value)
    throw std::overflow_error("element handle " + std::to_string(e.value) + " exceeds the 56-bit letter range");
  bits_ = (static_cast<std::uint64_t>(factor) << 56) | (static_cast<std::uint64_t>(e.value) & ((std::uint64_t{1} << 56) - 1));
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  return Word(std::vector<Letter>(letters_.begin() + pos, letters_.begin() + pos + len));
}

Word Word::reversed() const { return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend())); }

std::size_t WordHash::operator()(const Word& w) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Letter l : w) {
    h ^= l.bits();
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::string_view to_string(SyllableType t) {
  switch (t) {
    case SyllableType::identity: return "identity";
    case SyllableType::g_even: return "G-even";
    case SyllableType::h_even: return "H-even";
    case SyllableType::g_odd: return "G-odd";
    case SyllableType::h_odd: return "H-odd";
  }
  return "?";
}

SyllableType syllable_type(const Word& w) {
  if (w.empty()) return SyllableType::identity;
  const bool g = w.front().factor() == 0;
  if (w.size() % 2 == 0) return g ? SyllableType::g_even : SyllableType::h_even;
  return g ? SyllableType::g_odd : SyllableType::h_odd;
}

// ---------------------------------------------------------------------------

FreeProduct::FreeProduct(std::vector<FactorGroupPtr> factors, std::vector<Generator> generators)
    : factors_(std::move(factors)), generators_(std::move(generators)), factor_generators_(factors_.size()) {
  if (factors_.empty()) throw GroupError("a free product needs at least one factor");
  std::set<std::string> names;
  for (const auto& gen : generators_) {
    if (gen.name.empty() || gen.name == "e") throw GroupError("invalid generator name '" + gen.name + "'");
    if (!names.insert(gen.name).second) throw GroupError("duplicate generator name '" + gen.name + "'");
    if (gen.letter.factor() >= factors_.size()) throw GroupError("generator '" + gen.name + "' names a missing factor");
    factor_generators_[gen.letter.factor()].push_back({gen.name, gen.letter.element()});
  }
}

const Generator* FreeProduct::find_generator(std::string_view name) const {
  for (const auto& gen : generators_)
    if (gen.name == name) return &gen;
  return nullptr;
}

Word FreeProduct::letter(std::size_t f, Element e) const {
  if (e == factor(f).identity()) return {};
  return Word({Letter(f, e)});
}

Word FreeProduct::generator(std::string_view name) const {
  const Generator* gen = find_generator(name);
  if (!gen) throw ParseError("unknown generator '" + std::string(name) + "'");
  return letter(gen->letter.factor(), gen->letter.element());
}

Element FreeProduct::multiply_letters(Letter a, Letter b) const {
  if (a.factor() != b.factor()) throw std::invalid_argument("letters lie in different factors");
  return factor(a.factor()).multiply(a.element(), b.element());
}

FreeProduct::Junction FreeProduct::junction(std::span<const Letter> x, std::span<const Letter> y) const {
  Junction j;
  const std::size_t limit = std::min(x.size(), y.size());
  while (j.cancelled < limit) {
    Letter a = x[x.size() - 1 - j.cancelled];
    Letter b = y[j.cancelled];
    if (a.factor() != b.factor()) break;
    Element p = factor(a.factor()).multiply(a.element(), b.element());
    if (p != factor(a.factor()).identity()) {
      j.absorbed = true;
      j.merged = Letter(a.factor(), p);
      break;
    }
    ++j.cancelled;
  }
  return j;
}

Word FreeProduct::multiply(const Word& x, const Word& y) const {
  const Junction j = junction(x.letters(), y.letters());
  const std::size_t drop = j.cancelled + (j.absorbed ? 1 : 0);
  std::vector<Letter> out;
  out.reserve(x.size() + y.size() - 2 * j.cancelled);
  out.insert(out.end(), x.begin(), x.end() - static_cast<std::ptrdiff_t>(drop));
  if (j.absorbed) out.push_back(j.merged);
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(drop), y.end());
  return Word(std::move(out));
}

Word FreeProduct::multiply(std::span<const Word> words) const {
  Word acc;
  for (const auto& w : words) acc = multiply(acc, w);
  return acc;
}

Word FreeProduct::inverse(const Word& x) const {
  std::vector<Letter> out;
  out.reserve(x.size());
  for (auto it = x.end(); it != x.begin();) {
    --it;
    out.emplace_back(it->factor(), factor(it->factor()).inverse(it->element()));
  }
  return Word(std::move(out));
}

Word FreeProduct::power(const Word& x, std::int64_t k) const {
  Word base = k < 0 ? inverse(x) : x;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Word result;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

Word FreeProduct::reduce(std::span<const Letter> letters) const {
  std::vector<Letter> stack;
  for (Letter l : letters) {
    if (l.element() == factor(l.factor()).identity()) continue;
    if (!stack.empty() && stack.back().factor() == l.factor()) {
      Element p = multiply_letters(stack.back(), l);
      if (p == factor(l.factor()).identity())
        stack.pop_back();
      else
        stack.back() = Letter(l.factor(), p);
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

Word FreeProduct::parse(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::string tok;
  std::vector<Letter> letters;
  std::size_t index = 0;
  while (in >> tok) {
    ++index;
    if (tok == "e") continue;
    const auto caret = tok.find('^');
    const std::string name = tok.substr(0, caret);
    std::int64_t exp = 1;
    if (caret != std::string::npos) {
      try {
        std::size_t used = 0;
        exp = std::stoll(tok.substr(caret + 1), &used);
        if (used != tok.size() - caret - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("token " + std::to_string(index) + " ('" + tok + "'): bad exponent");
      }
    }
    const Generator* gen = find_generator(name);
    if (!gen) throw ParseError("token " + std::to_string(index) + " ('" + tok + "'): unknown generator");
    const std::size_t f = gen->letter.factor();
    letters.emplace_back(f, factor(f).power(gen->letter.element(), exp));
  }
  return reduce(letters);
}

std::vector<Token> FreeProduct::tokens(const Word& w) const {
  std::vector<Token> out;
  for (Letter l : w) {
    auto part = factor(l.factor()).express(l.element(), factor_generators_[l.factor()]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string FreeProduct::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& t : tokens(w)) {
    if (!out.empty()) out += ' ';
    out += t.name;
    if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
  }
  return out;
}

std::string FreeProduct::describe(const Word& w) const {
  try {
    return format(w);
  } catch (const GroupError&) {
    std::string out = "[";
    for (Letter l : w) {
      if (out.size() > 1) out += ' ';
      out += std::to_string(l.factor()) + ":" + factor(l.factor()).to_json(l.element()).dump();
    }
    return out + "]";
  }
}

// ---------------------------------------------------------------------------

Word conjugate(const FreeProduct& fp, const Word& gamma, const Word& x) {
  return fp.multiply(fp.multiply(gamma, x), fp.inverse(gamma));
}

CyclicReduction cyclic_reduce(const FreeProduct& fp, const Word& x) {
  std::size_t lo = 0, hi = x.size();  // core is x[lo, hi)
  while (hi - lo >= 2 && x[lo].factor() == x[hi - 1].factor()) {
    Element p = fp.multiply_letters(x[lo], x[hi - 1]);
    if (p != fp.factor(x[lo].factor()).identity()) {
      // x[lo] m x[hi-1] = x[hi-1]^-1 (x[hi-1] x[lo] m) x[hi-1]
      Letter last = x[hi - 1];
      Element merged = fp.multiply_letters(last, x[lo]);
      std::vector<Letter> core{Letter(last.factor(), merged)};
      core.insert(core.end(), x.begin() + static_cast<std::ptrdiff_t>(lo) + 1,
                  x.begin() + static_cast<std::ptrdiff_t>(hi) - 1);
      Word conj = fp.multiply(x.slice(0, lo), fp.inverse(Word({last})));
      return {std::move(conj), Word(std::move(core))};
    }
    ++lo;
    --hi;
  }
  return {x.slice(0, lo), x.slice(lo, hi - lo)};
}

Order word_order(const FreeProduct& fp, const Word& x) {
  const auto cr = cyclic_reduce(fp, x);
  if (cr.core.empty()) return 1;
  if (cr.core.size() >= 2) return std::nullopt;
  return fp.factor(cr.core.front().factor()).order(cr.core.front().element());
}

PrimitiveRoot primitive_root(const FreeProduct& fp, const Word& x) {
  if (x.empty()) throw std::invalid_argument("the identity has no primitive root");
  const auto cr = cyclic_reduce(fp, x);
  const Word& core = cr.core;
  if (core.size() == 1) {
    const Letter l = core.front();
    const FactorGroup& grp = fp.factor(l.factor());
    if (grp.order(l.element())) throw std::invalid_argument("finite-order element has no primitive root");
    return {x, 1};
  }
  const std::size_t n = core.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + d < n && periodic; ++i) periodic = core[i] == core[i + d];
    if (periodic) return {conjugate(fp, cr.conjugator, core.slice(0, d)), static_cast<std::int64_t>(n / d)};
  }
  return {x, 1};
}

std::optional<std::int64_t> power_index(const FreeProduct& fp, const Word& x, const Word& root) {
  if (x.empty()) return 0;
  const auto cr = cyclic_reduce(fp, root);
  const Word& core = cr.core;
  if (core.empty()) return std::nullopt;
  const Word xc = conjugate(fp, fp.inverse(cr.conjugator), x);
  if (core.size() == 1) {
    if (xc.size() != 1 || xc.front().factor() != core.front().factor()) return std::nullopt;
    return fp.factor(core.front().factor()).power_index(xc.front().element(), core.front().element());
  }
  if (xc.size() % core.size() != 0) return std::nullopt;
  const auto k = static_cast<std::int64_t>(xc.size() / core.size());
  if (fp.power(core, k) == xc) return k;
  if (fp.power(core, -k) == xc) return -k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::string canonical_encode(const FreeProduct& fp, const Word& w) {
  std::string out;
  put_varint(out, w.size());
  for (Letter l : w) {
    put_varint(out, l.factor());
    const std::string payload = fp.factor(l.factor()).encode(l.element());
    put_varint(out, payload.size());
    out += payload;
  }
  return out;
}

Word canonical_decode(const FreeProduct& fp, std::string_view bytes) {
  const auto n = get_varint(bytes);
  std::vector<Letter> letters;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto f = get_varint(bytes);
    if (f >= fp.factor_count()) throw GroupError("factor index out of range in encoding");
    const auto len = get_varint(bytes);
    if (bytes.size() < len) throw GroupError("truncated word encoding");
    const Element e = fp.factor(f).decode(bytes.substr(0, len));
    bytes.remove_prefix(len);
    if (e == fp.factor(f).identity()) throw GroupError("identity letter in word encoding");
    if (!letters.empty() && letters.back().factor() == f) throw GroupError("adjacent letters share a factor");
    letters.emplace_back(f, e);
  }
  if (!bytes.empty()) throw GroupError("trailing bytes in word encoding");
  return Word(std::move(letters));
}

// ---------------------------------------------------------------------------

NestedFreeProductGroup::NestedFreeProductGroup(FreeProductPtr inner) : inner_(std::move(inner)), table_(Word{}) {}

Element NestedFreeProductGroup::multiply(Element g, Element h) const {
  return make(inner_->multiply(word(g), word(h)));
}
Element NestedFreeProductGroup::inverse(Element g) const { return make(inner_->inverse(word(g))); }
Order NestedFreeProductGroup::order(Element g) const { return word_order(*inner_, word(g)); }

bool NestedFreeProductGroup::is_finite() const {
  return inner_->factor_count() == 1 && inner_->factor(0).is_finite();
}

std::string NestedFreeProductGroup::encode(Element g) const { return canonical_encode(*inner_, word(g)); }
Element NestedFreeProductGroup::decode(std::string_view bytes) const { return make(canonical_decode(*inner_, bytes)); }
nlohmann::json NestedFreeProductGroup::to_json(Element g) const { return inner_->format(word(g)); }

Element NestedFreeProductGroup::from_json(const nlohmann::json& j) const {
  if (!j.is_string()) throw GroupError("nested free product elements are word strings");
  return make(inner_->parse(j.get<std::string>()));
}

std::vector<Token> NestedFreeProductGroup::express(Element g, std::span<const NamedElement>) const {
  return inner_->tokens(word(g));
}

std::optional<std::int64_t> NestedFreeProductGroup::power_index(Element g, Element root) const {
  return fpg::power_index(*inner_, word(g), word(root));
}

// ---------------------------------------------------------------------------

std::size_t WordWithZHash::operator()(const WordWithZ& p) const {
  return WordHash{}(p.base) * 31 + std::hash<std::int64_t>{}(p.z);
}

DirectProductWithIntegers::DirectProductWithIntegers(FreeProductPtr base, std::string z_name)
    : base_(std::move(base)), z_name_(std::move(z_name)), table_(WordWithZ{}) {}

Element DirectProductWithIntegers::multiply(Element g, Element h) const {
  const auto& a = pair(g);
  const auto& b = pair(h);
  return make(base_->multiply(a.base, b.base), checked_add(a.z, b.z));
}

Element DirectProductWithIntegers::inverse(Element g) const {
  const auto& a = pair(g);
  return make(base_->inverse(a.base), checked_mul(a.z, -1));
}

Order DirectProductWithIntegers::order(Element g) const {
  const auto& a = pair(g);
  if (a.z != 0) return std::nullopt;
  return word_order(*base_, a.base);
}

std::string DirectProductWithIntegers::encode(Element g) const {
  const auto& a = pair(g);
  std::string out;
  const std::string inner = canonical_encode(*base_, a.base);
  put_varint(out, inner.size());
  out += inner;
  put_signed(out, a.z);
  return out;
}

Element DirectProductWithIntegers::decode(std::string_view bytes) const {
  const auto len = get_varint(bytes);
  if (bytes.size() < len) throw GroupError("truncated direct product encoding");
  Word w = canonical_decode(*base_, bytes.substr(0, len));
  bytes.remove_prefix(len);
  const std::int64_t z = get_signed(bytes);
  if (!bytes.empty()) throw GroupError("trailing bytes in direct product encoding");
  return make(w, z);
}

nlohmann::json DirectProductWithIntegers::to_json(Element g) const {
  const auto& a = pair(g);
  return nlohmann::json::array({base_->format(a.base), a.z});
}

Element DirectProductWithIntegers::from_json(const nlohmann::json& j) const {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_number_integer())
    throw GroupError("direct product elements are [\"word\", integer]");
  return make(base_->parse(j[0].get<std::string>()), j[1].get<std::int64_t>());
}

std::vector<Token> DirectProductWithIntegers::express(Element g, std::span<const NamedElement>) const {
  const auto& a = pair(g);
  auto out = base_->tokens(a.base);
  if (a.z != 0) out.push_back({z_name_, a.z});
  return out;
}

}  // namespace fpg

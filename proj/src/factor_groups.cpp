#include "fpg/factor_groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "fpg/sl2.hpp"

namespace fpg {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::integers: return "integers";
    case GroupKind::cayley_table: return "cayley-table";
    case GroupKind::sl2z: return "sl2z";
    case GroupKind::baumslag_solitar: return "baumslag-solitar";
    case GroupKind::direct_product_with_integers: return "direct-product-with-integers";
    case GroupKind::free_product: return "free-product";
  }
  return "?";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in group arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in group arithmetic");
  return r;
}

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void put_signed(std::string& out, std::int64_t v) {
  put_varint(out, (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

std::uint64_t get_varint(std::string_view& in) {
  std::uint64_t v = 0;
  for (int shift = 0; shift < 64; shift += 7) {
    if (in.empty()) throw GroupError("truncated encoding");
    auto byte = static_cast<unsigned char>(in.front());
    in.remove_prefix(1);
    v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80)) return v;
  }
  throw GroupError("malformed varint");
}

std::int64_t get_signed(std::string_view& in) {
  std::uint64_t z = get_varint(in);
  return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
}

namespace {

std::string encode_scalar(Element g) {
  std::string out;
  put_signed(out, g.value);
  return out;
}

Element decode_scalar(std::string_view bytes) {
  Element g{get_signed(bytes)};
  if (!bytes.empty()) throw GroupError("trailing bytes in element encoding");
  return g;
}

std::int64_t json_integer(const nlohmann::json& j) {
  if (!j.is_number_integer()) throw GroupError("expected an integer element, got " + j.dump());
  return j.get<std::int64_t>();
}

// Shortest spelling of g over gens^{+-1} by breadth-first search of a finite group.
std::vector<Token> finite_express(const FactorGroup& grp, Element g, std::span<const NamedElement> gens) {
  if (g == grp.identity()) return {};
  std::map<std::int64_t, std::pair<std::int64_t, std::pair<std::size_t, int>>> parent;
  parent[grp.identity().value] = {-1, {0, 0}};
  std::deque<Element> queue{grp.identity()};
  while (!queue.empty()) {
    Element cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (int sign : {1, -1}) {
        Element step = sign > 0 ? gens[i].element : grp.inverse(gens[i].element);
        Element next = grp.multiply(cur, step);
        if (parent.contains(next.value)) continue;
        parent[next.value] = {cur.value, {i, sign}};
        if (next == g) {
          std::vector<Token> rev;
          for (std::int64_t at = g.value; parent[at].first != -1; at = parent[at].first) {
            auto [gi, s] = parent[at].second;
            if (!rev.empty() && rev.back().name == gens[gi].name)
              rev.back().exponent += s;
            else
              rev.push_back({gens[gi].name, s});
          }
          std::erase_if(rev, [](const Token& t) { return t.exponent == 0; });
          std::reverse(rev.begin(), rev.end());
          return rev;
        }
        queue.push_back(next);
      }
    }
  }
  throw GroupError("element is not in the subgroup spanned by the declared generators");
}

}  // namespace

// ---------------------------------------------------------------------------

Element FactorGroup::power(Element g, std::int64_t k) const {
  if (k < 0) {
    g = inverse(g);
    k = -k;
  }
  Element result = identity();
  while (k > 0) {
    if (k & 1) result = multiply(result, g);
    k >>= 1;
    if (k) g = multiply(g, g);
  }
  return result;
}

std::vector<Token> FactorGroup::express(Element g, std::span<const NamedElement> gens) const {
  if (g == identity()) return {};
  for (const auto& gen : gens) {
    for (std::int64_t k = 1; k <= 64; ++k) {
      if (power(gen.element, k) == g) return {{gen.name, k}};
      if (power(gen.element, -k) == g) return {{gen.name, -k}};
    }
  }
  throw GroupError("cannot express element over the declared generators");
}

std::optional<std::int64_t> FactorGroup::power_index(Element g, Element root) const {
  if (g == identity()) return 0;
  Element up = identity(), down = identity();
  Element root_inv = inverse(root);
  for (std::int64_t k = 1; k <= 64; ++k) {
    up = multiply(up, root);
    down = multiply(down, root_inv);
    if (up == g) return k;
    if (down == g) return -k;
  }
  return std::nullopt;
}

std::optional<Element> FactorGroup::cyclic_generator(std::span<const Element> elems) const {
  for (Element cand : elems) {
    bool ok = std::all_of(elems.begin(), elems.end(),
                          [&](Element e) { return power_index(e, cand).has_value(); });
    if (ok) return cand;
  }
  if (std::all_of(elems.begin(), elems.end(), [&](Element e) { return e == identity(); }))
    return identity();
  return std::nullopt;
}

// ---------------------------------------------------------------------------

CyclicGroup::CyclicGroup(std::int64_t n) : n_(n) {
  if (n < 1) throw GroupError("cyclic group order must be positive");
}

Element CyclicGroup::multiply(Element g, Element h) const { return Element{(g.value + h.value) % n_}; }
Element CyclicGroup::inverse(Element g) const { return Element{(n_ - g.value) % n_}; }

Order CyclicGroup::order(Element g) const {
  return static_cast<std::uint64_t>(n_ / std::gcd(g.value, n_));
}

std::string CyclicGroup::encode(Element g) const { return encode_scalar(g); }

Element CyclicGroup::decode(std::string_view bytes) const {
  Element g = decode_scalar(bytes);
  if (g.value < 0 || g.value >= n_) throw GroupError("residue out of range");
  return g;
}

Element CyclicGroup::from_json(const nlohmann::json& j) const {
  std::int64_t v = json_integer(j) % n_;
  return Element{v < 0 ? v + n_ : v};
}

std::vector<Token> CyclicGroup::express(Element g, std::span<const NamedElement> gens) const {
  return finite_express(*this, g, gens);
}

std::optional<std::int64_t> CyclicGroup::power_index(Element g, Element root) const {
  Element acc = identity();
  for (std::int64_t k = 0; k < n_; ++k) {
    if (acc == g) return k;
    acc = multiply(acc, root);
  }
  return std::nullopt;
}

std::optional<Element> CyclicGroup::cyclic_generator(std::span<const Element> elems) const {
  std::int64_t d = n_;
  for (Element e : elems) d = std::gcd(d, e.value);
  return Element{d % n_};
}

// ---------------------------------------------------------------------------

Element IntegerGroup::multiply(Element g, Element h) const { return Element{checked_add(g.value, h.value)}; }
Element IntegerGroup::inverse(Element g) const { return Element{checked_mul(g.value, -1)}; }
Order IntegerGroup::order(Element g) const {
  if (g.value == 0) return 1;
  return std::nullopt;
}
std::string IntegerGroup::encode(Element g) const { return encode_scalar(g); }
Element IntegerGroup::decode(std::string_view bytes) const { return decode_scalar(bytes); }
Element IntegerGroup::from_json(const nlohmann::json& j) const { return Element{json_integer(j)}; }

std::vector<Token> IntegerGroup::express(Element g, std::span<const NamedElement> gens) const {
  if (g.value == 0) return {};
  for (const auto& gen : gens)
    if (gen.element.value != 0 && g.value % gen.element.value == 0) return {{gen.name, g.value / gen.element.value}};
  // Bezout combination of the first pair whose gcd divides g.
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      std::int64_t a = gens[i].element.value, b = gens[j].element.value;
      std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
        std::tie(old_t, t) = std::pair{t, old_t - q * t};
      }
      if (old_r != 0 && g.value % old_r == 0) {
        std::int64_t f = g.value / old_r;
        std::vector<Token> out;
        if (old_s != 0) out.push_back({gens[i].name, checked_mul(old_s, f)});
        if (old_t != 0) out.push_back({gens[j].name, checked_mul(old_t, f)});
        return out;
      }
    }
  }
  throw GroupError("integer " + std::to_string(g.value) + " is not spanned by the declared generators");
}

std::optional<std::int64_t> IntegerGroup::power_index(Element g, Element root) const {
  if (root.value == 0) return g.value == 0 ? std::optional<std::int64_t>{0} : std::nullopt;
  if (g.value % root.value != 0) return std::nullopt;
  return g.value / root.value;
}

std::optional<Element> IntegerGroup::cyclic_generator(std::span<const Element> elems) const {
  std::int64_t d = 0;
  for (Element e : elems) d = std::gcd(d, e.value);
  return Element{d};
}

// ---------------------------------------------------------------------------

CayleyTableGroup::CayleyTableGroup(std::vector<std::vector<std::int64_t>> table) : table_(std::move(table)) {
  const auto n = static_cast<std::int64_t>(table_.size());
  if (n == 0) throw GroupError("empty Cayley table");
  for (const auto& row : table_) {
    if (static_cast<std::int64_t>(row.size()) != n) throw GroupError("Cayley table is not square");
    for (auto v : row)
      if (v < 0 || v >= n) throw GroupError("Cayley table entry out of range: " + std::to_string(v));
  }
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n), col_seen(n);
    for (std::int64_t j = 0; j < n; ++j) {
      auto r = table_[i][j], c = table_[j][i];
      if (row_seen[r] || col_seen[c])
        throw GroupError("not a Latin square (repeated entry in row/column " + std::to_string(i) + ")");
      row_seen[r] = col_seen[c] = true;
    }
  }
  for (std::int64_t i = 0; i < n; ++i)
    if (table_[0][i] != i || table_[i][0] != i) throw GroupError("index 0 is not the identity");
  inverse_.assign(n, -1);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j)
      if (table_[i][j] == 0 && table_[j][i] == 0) inverse_[i] = j;
    if (inverse_[i] < 0) throw GroupError("missing inverse for element " + std::to_string(i));
  }
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k)
        if (table_[table_[i][j]][k] != table_[i][table_[j][k]])
          throw GroupError("associativity fails on triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                           std::to_string(k) + ")");
}

void CayleyTableGroup::check_index(Element g) const {
  if (g.value < 0 || g.value >= static_cast<std::int64_t>(table_.size()))
    throw GroupError("Cayley index out of range: " + std::to_string(g.value));
}

Element CayleyTableGroup::multiply(Element g, Element h) const { return Element{table_[g.value][h.value]}; }
Element CayleyTableGroup::inverse(Element g) const { return Element{inverse_[g.value]}; }

Order CayleyTableGroup::order(Element g) const {
  std::uint64_t k = 1;
  for (Element acc = g; acc != identity(); acc = multiply(acc, g)) ++k;
  return k;
}

std::string CayleyTableGroup::encode(Element g) const { return encode_scalar(g); }
Element CayleyTableGroup::decode(std::string_view bytes) const {
  Element g = decode_scalar(bytes);
  check_index(g);
  return g;
}
Element CayleyTableGroup::from_json(const nlohmann::json& j) const {
  Element g{json_integer(j)};
  check_index(g);
  return g;
}

std::vector<Token> CayleyTableGroup::express(Element g, std::span<const NamedElement> gens) const {
  return finite_express(*this, g, gens);
}

std::optional<std::int64_t> CayleyTableGroup::power_index(Element g, Element root) const {
  Element acc = identity();
  const auto ord = static_cast<std::int64_t>(*order(root));
  for (std::int64_t k = 0; k < ord; ++k) {
    if (acc == g) return k;
    acc = multiply(acc, root);
  }
  return std::nullopt;
}

std::optional<Element> CayleyTableGroup::cyclic_generator(std::span<const Element> elems) const {
  // Closure of the generated subgroup, then look for an element of full order.
  std::vector<bool> in(table_.size());
  std::vector<Element> members{identity()};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (Element e : elems) {
      Element p = multiply(members[i], e);
      if (!in[p.value]) {
        in[p.value] = true;
        members.push_back(p);
      }
    }
  for (Element cand : members)
    if (*order(cand) == members.size()) return cand;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Matrix2 Matrix2::operator*(const Matrix2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::size_t Matrix2Hash::operator()(const Matrix2& m) const {
  std::size_t h = 0;
  for (const BigInt* v : {&m.a, &m.b, &m.c, &m.d})
    h = h * 0x9e3779b97f4a7c15ULL + boost::multiprecision::hash_value(*v);
  return h;
}

Sl2zGroup::Sl2zGroup() : table_(Matrix2::identity()) {}

Element Sl2zGroup::make(const Matrix2& m) const {
  if (m.det() != 1) throw GroupError("matrix determinant is not 1");
  return table_.intern(m);
}

Element Sl2zGroup::multiply(Element g, Element h) const { return table_.intern(matrix(g) * matrix(h)); }

Element Sl2zGroup::inverse(Element g) const {
  const auto& m = matrix(g);
  return table_.intern({m.d, -m.b, -m.c, m.a});
}

Order Sl2zGroup::order(Element g) const {
  const auto& m = matrix(g);
  const BigInt tr = m.a + m.d;
  std::optional<std::uint64_t> claim;
  if (tr == 0) claim = 4;
  else if (tr == 1) claim = 6;
  else if (tr == -1) claim = 3;
  else if (tr == 2 && m == Matrix2::identity()) claim = 1;
  else if (tr == -2 && m == Matrix2{-1, 0, 0, -1}) claim = 2;
  if (!claim) return std::nullopt;
  // Confirm the trace classification by iteration.
  Element acc = g;
  std::uint64_t k = 1;
  while (acc != identity() && k <= 12) {
    acc = multiply(acc, g);
    ++k;
  }
  if (k != *claim) throw std::logic_error("SL(2,Z) order trace check disagrees with iteration");
  return claim;
}

std::string Sl2zGroup::encode(Element g) const {
  const auto& m = matrix(g);
  std::string out;
  for (const BigInt* v : {&m.a, &m.b, &m.c, &m.d}) {
    std::string digits = v->str();
    put_varint(out, digits.size());
    out += digits;
  }
  return out;
}

Element Sl2zGroup::decode(std::string_view bytes) const {
  BigInt v[4];
  for (auto& x : v) {
    auto len = get_varint(bytes);
    if (bytes.size() < len) throw GroupError("truncated matrix encoding");
    x = BigInt(std::string(bytes.substr(0, len)));
    bytes.remove_prefix(len);
  }
  return make({v[0], v[1], v[2], v[3]});
}

nlohmann::json Sl2zGroup::to_json(Element g) const {
  const auto& m = matrix(g);
  auto entry = [](const BigInt& v) -> nlohmann::json {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
      return static_cast<std::int64_t>(v);
    return v.str();
  };
  return nlohmann::json::array({nlohmann::json::array({entry(m.a), entry(m.b)}),
                                nlohmann::json::array({entry(m.c), entry(m.d)})});
}

Element Sl2zGroup::from_json(const nlohmann::json& j) const {
  auto entry = [](const nlohmann::json& v) -> BigInt {
    if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
    if (v.is_string()) return BigInt(v.get<std::string>());
    throw GroupError("matrix entries must be integers");
  };
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    throw GroupError("expected a 2x2 matrix [[a,b],[c,d]]");
  return make({entry(j[0][0]), entry(j[0][1]), entry(j[1][0]), entry(j[1][1])});
}

std::vector<Token> Sl2zGroup::express(Element g, std::span<const NamedElement> gens) const {
  const Element s = make(sl2::S()), t = make(sl2::T());
  const Element s_inv = inverse(s), t_inv = inverse(t);
  auto lookup = [&](Element want, Element want_inv) -> std::pair<std::string, std::int64_t> {
    for (const auto& gen : gens) {
      if (gen.element == want) return {gen.name, 1};
      if (gen.element == want_inv) return {gen.name, -1};
    }
    throw GroupError("SL(2,Z) words need generators equal to S and T (or their inverses)");
  };
  auto [s_name, s_sign] = lookup(s, s_inv);
  auto [t_name, t_sign] = lookup(t, t_inv);
  const auto dec = sl2::decompose(matrix(g));
  std::vector<Token> out;
  auto push = [&](const std::string& name, std::int64_t e) {
    if (e == 0) return;
    if (!out.empty() && out.back().name == name) {
      out.back().exponent += e;
      if (out.back().exponent == 0) out.pop_back();
    } else {
      out.push_back({name, e});
    }
  };
  if (dec.negate) push(s_name, 2 * s_sign);
  for (const auto& [letter, e] : dec.factors) push(letter == 'S' ? s_name : t_name, e * (letter == 'S' ? s_sign : t_sign));
  return out;
}

// ---------------------------------------------------------------------------

std::size_t BritonWordHash::operator()(const BritonWord& w) const {
  std::size_t h = w.y_signs.size();
  for (auto e : w.x_exponents) h = h * 0x100000001b3ULL ^ static_cast<std::size_t>(e);
  for (auto s : w.y_signs) h = h * 0x100000001b3ULL ^ static_cast<std::size_t>(s + 7);
  return h;
}

BaumslagSolitarGroup::BaumslagSolitarGroup(std::int64_t m, std::int64_t n)
    : m_(m), n_(n), table_(BritonWord{}) {
  if (m == 0 || n == 0) throw GroupError("Baumslag-Solitar parameters must be non-zero");
  const std::pair<char, std::int64_t> xs[] = {{'x', 1}};
  const std::pair<char, std::int64_t> ys[] = {{'y', 1}};
  x_ = make(xs);
  y_ = make(ys);
}

BritonWord BaumslagSolitarGroup::normalize(std::span<const std::pair<char, std::int64_t>> tokens) const {
  std::vector<std::int64_t> residues;
  std::vector<std::int8_t> signs;
  std::int64_t carry = 0;
  for (const auto& [sym, count] : tokens) {
    if (sym == 'x') {
      carry = checked_add(carry, count);
      continue;
    }
    const std::int8_t e = count > 0 ? 1 : -1;
    for (std::int64_t rep = 0; rep < (count > 0 ? count : -count); ++rep) {
      // x^{q*div + r} y^e -> x^r y^e x^{q*other}
      const std::int64_t div = e > 0 ? n_ : m_;
      const std::int64_t other = e > 0 ? m_ : n_;
      const std::int64_t mod = div > 0 ? div : -div;
      std::int64_t r = carry % mod;
      if (r < 0) r += mod;
      const std::int64_t q = (carry - r) / div;
      const std::int64_t pushed = checked_mul(q, other);
      if (r == 0 && !signs.empty() && signs.back() == -e) {
        carry = checked_add(residues.back(), pushed);
        residues.pop_back();
        signs.pop_back();
      } else {
        residues.push_back(r);
        signs.push_back(e);
        carry = pushed;
      }
    }
  }
  residues.push_back(carry);
  return BritonWord{std::move(residues), std::move(signs)};
}

std::vector<std::pair<char, std::int64_t>> BaumslagSolitarGroup::tokens_of(const BritonWord& w) {
  std::vector<std::pair<char, std::int64_t>> out;
  for (std::size_t i = 0; i < w.x_exponents.size(); ++i) {
    if (w.x_exponents[i] != 0) out.emplace_back('x', w.x_exponents[i]);
    if (i < w.y_signs.size()) out.emplace_back('y', w.y_signs[i]);
  }
  return out;
}

Element BaumslagSolitarGroup::make(std::span<const std::pair<char, std::int64_t>> tokens) const {
  return table_.intern(normalize(tokens));
}

Element BaumslagSolitarGroup::multiply(Element g, Element h) const {
  auto tokens = tokens_of(word(g));
  auto rhs = tokens_of(word(h));
  tokens.insert(tokens.end(), rhs.begin(), rhs.end());
  return make(tokens);
}

Element BaumslagSolitarGroup::inverse(Element g) const {
  auto tokens = tokens_of(word(g));
  std::reverse(tokens.begin(), tokens.end());
  for (auto& t : tokens) t.second = -t.second;
  return make(tokens);
}

Order BaumslagSolitarGroup::order(Element g) const {
  // HNN extensions of Z are torsion-free.
  if (g == identity()) return 1;
  return std::nullopt;
}

Element BaumslagSolitarGroup::parse(std::string_view text) const {
  std::vector<std::pair<char, std::int64_t>> tokens;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    char sym = tok[0];
    if ((sym != 'x' && sym != 'y') || (tok.size() > 1 && tok[1] != '^'))
      throw GroupError("bad Baumslag-Solitar token '" + tok + "'");
    std::int64_t exp = 1;
    if (tok.size() > 1) {
      try {
        std::size_t used = 0;
        exp = std::stoll(tok.substr(2), &used);
        if (used != tok.size() - 2) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw GroupError("bad exponent in token '" + tok + "'");
      }
    }
    tokens.emplace_back(sym, exp);
  }
  return make(tokens);
}

std::string BaumslagSolitarGroup::format(Element g) const {
  std::string out;
  for (const auto& [sym, e] : tokens_of(word(g))) {
    if (!out.empty()) out += ' ';
    out += sym;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "e" : out;
}

std::string BaumslagSolitarGroup::encode(Element g) const {
  const auto& w = word(g);
  std::string out;
  put_varint(out, w.y_signs.size());
  for (auto e : w.x_exponents) put_signed(out, e);
  for (auto s : w.y_signs) put_signed(out, s);
  return out;
}

Element BaumslagSolitarGroup::decode(std::string_view bytes) const {
  BritonWord w;
  auto k = get_varint(bytes);
  w.x_exponents.clear();
  for (std::uint64_t i = 0; i <= k; ++i) w.x_exponents.push_back(get_signed(bytes));
  for (std::uint64_t i = 0; i < k; ++i) w.y_signs.push_back(static_cast<std::int8_t>(get_signed(bytes)));
  if (!bytes.empty()) throw GroupError("trailing bytes in Baumslag-Solitar encoding");
  Element g = make(tokens_of(w));
  if (!(word(g) == w)) throw GroupError("encoding is not a Britton normal form");
  return g;
}

Element BaumslagSolitarGroup::from_json(const nlohmann::json& j) const {
  if (!j.is_string()) throw GroupError("Baumslag-Solitar elements are token strings like \"x^3 y^-1 x\"");
  return parse(j.get<std::string>());
}

std::vector<Token> BaumslagSolitarGroup::express(Element g, std::span<const NamedElement> gens) const {
  auto find = [&](Element want) -> std::pair<std::string, std::int64_t> {
    for (const auto& gen : gens) {
      if (gen.element == want) return {gen.name, 1};
      if (gen.element == inverse(want)) return {gen.name, -1};
    }
    throw GroupError("Baumslag-Solitar words need generators equal to x and y");
  };
  auto [xn, xs] = find(x_);
  auto [yn, ys] = find(y_);
  std::vector<Token> out;
  for (const auto& [sym, e] : tokens_of(word(g)))
    out.push_back(sym == 'x' ? Token{xn, e * xs} : Token{yn, e * ys});
  return out;
}

}  // namespace fpg

#pragma once

// Exact group arithmetic backends used as the factors of a free product.
//
// Every backend represents its elements by a canonical 64-bit handle
// (`Element`).  Scalar backends (cyclic, integers, Cayley tables) store the
// value itself; backends with structured payloads (SL(2,Z) matrices,
// Baumslag-Solitar words, nested free products, direct products with Z)
// intern each canonical payload and hand out its table index.  In every
// backend handle 0 is the identity and handle equality is group equality.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace fpg {

using BigInt = boost::multiprecision::cpp_int;

struct Element {
  std::int64_t value = 0;
  friend constexpr bool operator==(Element, Element) = default;
  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Element order; `std::nullopt` means infinite.
using Order = std::optional<std::uint64_t>;

/// Thrown for malformed group descriptions and invalid element payloads.
class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GroupKind {
  cyclic,
  integers,
  cayley_table,
  sl2z,
  baumslag_solitar,
  direct_product_with_integers,
  free_product,
};

std::string_view to_string(GroupKind kind);

/// A named generator as it appears in word syntax.
struct NamedElement {
  std::string name;
  Element element;
};

/// One `name^exp` token of the word syntax.
struct Token {
  std::string name;
  std::int64_t exponent = 1;
};

class FactorGroup {
 public:
  virtual ~FactorGroup() = default;

  virtual GroupKind kind() const = 0;
  Element identity() const { return Element{0}; }
  virtual Element multiply(Element g, Element h) const = 0;
  virtual Element inverse(Element g) const = 0;
  virtual Order order(Element g) const = 0;
  virtual bool is_finite() const = 0;

  Element power(Element g, std::int64_t k) const;

  /// Injective, deterministic byte encoding of an element's payload.
  virtual std::string encode(Element g) const = 0;
  virtual Element decode(std::string_view bytes) const = 0;

  /// Element serialization used in group spec documents.
  virtual nlohmann::json to_json(Element g) const = 0;
  virtual Element from_json(const nlohmann::json& j) const = 0;

  /// Spells `g` as generator tokens; throws GroupError when the backend
  /// cannot express `g` over `gens`.
  virtual std::vector<Token> express(Element g, std::span<const NamedElement> gens) const;

  /// Some k with root^k == g.  The default searches |k| <= 64 only, so a
  /// nullopt answer from it is inconclusive.
  virtual std::optional<std::int64_t> power_index(Element g, Element root) const;

  /// A generator of <elems> when that subgroup is known to be cyclic.
  virtual std::optional<Element> cyclic_generator(std::span<const Element> elems) const;
};

using FactorGroupPtr = std::shared_ptr<const FactorGroup>;

// ---------------------------------------------------------------------------

class CyclicGroup final : public FactorGroup {
 public:
  explicit CyclicGroup(std::int64_t n);
  std::int64_t modulus() const { return n_; }

  GroupKind kind() const override { return GroupKind::cyclic; }
  Element multiply(Element g, Element h) const override;
  Element inverse(Element g) const override;
  Order order(Element g) const override;
  bool is_finite() const override { return true; }
  std::string encode(Element g) const override;
  Element decode(std::string_view bytes) const override;
  nlohmann::json to_json(Element g) const override { return g.value; }
  Element from_json(const nlohmann::json& j) const override;
  std::vector<Token> express(Element g, std::span<const NamedElement> gens) const override;
  std::optional<std::int64_t> power_index(Element g, Element root) const override;
  std::optional<Element> cyclic_generator(std::span<const Element> elems) const override;

 private:
  std::int64_t n_;
};

class IntegerGroup final : public FactorGroup {
 public:
  GroupKind kind() const override { return GroupKind::integers; }
  Element multiply(Element g, Element h) const override;
  Element inverse(Element g) const override;
  Order order(Element g) const override;
  bool is_finite() const override { return false; }
  std::string encode(Element g) const override;
  Element decode(std::string_view bytes) const override;
  nlohmann::json to_json(Element g) const override { return g.value; }
  Element from_json(const nlohmann::json& j) const override;
  std::vector<Token> express(Element g, std::span<const NamedElement> gens) const override;
  std::optional<std::int64_t> power_index(Element g, Element root) const override;
  std::optional<Element> cyclic_generator(std::span<const Element> elems) const override;
};

/// Finite group given by its multiplication table; index 0 is the identity.
class CayleyTableGroup final : public FactorGroup {
 public:
  /// Validates the group axioms; throws GroupError naming the first violation.
  explicit CayleyTableGroup(std::vector<std::vector<std::int64_t>> table);
  std::size_t size() const { return table_.size(); }

  GroupKind kind() const override { return GroupKind::cayley_table; }
  Element multiply(Element g, Element h) const override;
  Element inverse(Element g) const override;
  Order order(Element g) const override;
  bool is_finite() const override { return true; }
  std::string encode(Element g) const override;
  Element decode(std::string_view bytes) const override;
  nlohmann::json to_json(Element g) const override { return g.value; }
  Element from_json(const nlohmann::json& j) const override;
  std::vector<Token> express(Element g, std::span<const NamedElement> gens) const override;
  std::optional<std::int64_t> power_index(Element g, Element root) const override;
  std::optional<Element> cyclic_generator(std::span<const Element> elems) const override;

 private:
  void check_index(Element g) const;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::int64_t> inverse_;
};

/// Thread-safe payload interning; handle 0 is reserved for the identity.
template <class Payload, class Hash>
class InternTable {
 public:
  explicit InternTable(Payload identity) { intern(std::move(identity)); }

  Element intern(Payload p) const {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = index_.try_emplace(p, static_cast<std::int64_t>(payloads_.size()));
    if (inserted) payloads_.push_back(std::make_unique<Payload>(std::move(p)));
    return Element{it->second};
  }

  const Payload& at(Element g) const {
    std::lock_guard lock(mutex_);
    if (g.value < 0 || static_cast<std::size_t>(g.value) >= payloads_.size())
      throw GroupError("unknown element handle " + std::to_string(g.value));
    return *payloads_[static_cast<std::size_t>(g.value)];
  }

 private:
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<Payload>> payloads_;
  mutable std::unordered_map<Payload, std::int64_t, Hash> index_;
};

struct Matrix2 {
  BigInt a, b, c, d;
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
  Matrix2 operator*(const Matrix2& o) const;
  BigInt det() const { return a * d - b * c; }
  static Matrix2 identity() { return {1, 0, 0, 1}; }
};

struct Matrix2Hash {
  std::size_t operator()(const Matrix2& m) const;
};

class Sl2zGroup final : public FactorGroup {
 public:
  Sl2zGroup();

  Element make(const Matrix2& m) const;  ///< throws GroupError unless det == 1
  const Matrix2& matrix(Element g) const { return table_.at(g); }

  GroupKind kind() const override { return GroupKind::sl2z; }
  Element multiply(Element g, Element h) const override;
  Element inverse(Element g) const override;
  Order order(Element g) const override;
  bool is_finite() const override { return false; }
  std::string encode(Element g) const override;
  Element decode(std::string_view bytes) const override;
  nlohmann::json to_json(Element g) const override;
  Element from_json(const nlohmann::json& j) const override;
  std::vector<Token> express(Element g, std::span<const NamedElement> gens) const override;

 private:
  InternTable<Matrix2, Matrix2Hash> table_;
};

/// Britton normal form x^{a0} y^{e1} x^{a1} ... y^{ek} x^{ak} of BS(m,n).
/// Residues a_{i-1} lie in [0,|n|) before y and in [0,|m|) before y^-1.
struct BritonWord {
  std::vector<std::int64_t> x_exponents{0};  // size k+1
  std::vector<std::int8_t> y_signs;          // size k
  friend bool operator==(const BritonWord&, const BritonWord&) = default;
};

struct BritonWordHash {
  std::size_t operator()(const BritonWord& w) const;
};

class BaumslagSolitarGroup final : public FactorGroup {
 public:
  BaumslagSolitarGroup(std::int64_t m, std::int64_t n);
  std::int64_t m() const { return m_; }
  std::int64_t n() const { return n_; }

  Element x() const { return x_; }
  Element y() const { return y_; }
  /// Normalizes an arbitrary token sequence (x exponents and y^{+-1}).
  BritonWord normalize(std::span<const std::pair<char, std::int64_t>> tokens) const;
  Element make(std::span<const std::pair<char, std::int64_t>> tokens) const;
  const BritonWord& word(Element g) const { return table_.at(g); }
  Element parse(std::string_view text) const;  ///< "x^3 y^-1 x"
  std::string format(Element g) const;

  GroupKind kind() const override { return GroupKind::baumslag_solitar; }
  Element multiply(Element g, Element h) const override;
  Element inverse(Element g) const override;
  Order order(Element g) const override;
  bool is_finite() const override { return false; }
  std::string encode(Element g) const override;
  Element decode(std::string_view bytes) const override;
  nlohmann::json to_json(Element g) const override { return format(g); }
  Element from_json(const nlohmann::json& j) const override;
  std::vector<Token> express(Element g, std::span<const NamedElement> gens) const override;

 private:
  static std::vector<std::pair<char, std::int64_t>> tokens_of(const BritonWord& w);
  std::int64_t m_, n_;
  InternTable<BritonWord, BritonWordHash> table_;
  Element x_, y_;
};

// Varint helpers shared by the encoders.
void put_varint(std::string& out, std::uint64_t v);
void put_signed(std::string& out, std::int64_t v);
std::uint64_t get_varint(std::string_view& in);
std::int64_t get_signed(std::string_view& in);

/// Checked int64 arithmetic; throws std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace fpg

#pragma once

// Normal-form arithmetic in free products G_0 * G_1 * ... of factor groups.
//
// A Word is the normal form itself: a sequence of letters (factor index,
// non-identity element) with adjacent letters in distinct factors.  Words do
// not carry their ambient group; every operation takes the FreeProduct.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fpg/factor_groups.hpp"

namespace fpg {

/// Factor index in the top 8 bits, signed 56-bit element handle below.
class Letter {
 public:
  static constexpr std::int64_t max_value = (std::int64_t{1} << 55) - 1;
  static constexpr std::int64_t min_value = -(std::int64_t{1} << 55);

  constexpr Letter() = default;
  Letter(std::size_t factor, Element e);

  constexpr std::size_t factor() const { return static_cast<std::size_t>(bits_ >> 56); }
  constexpr Element element() const {
    return Element{static_cast<std::int64_t>(bits_ << 8) >> 8};
  }
  constexpr std::uint64_t bits() const { return bits_; }

  friend constexpr bool operator==(Letter, Letter) = default;

 private:
  std::uint64_t bits_ = 0;
};

static_assert(sizeof(Letter) == 8);

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }
  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  /// Letters [pos, pos+len) as a word; a sub-range of a normal form is normal.
  Word slice(std::size_t pos, std::size_t len) const;
  Word reversed() const;

  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

/// Syllable length: number of letters in the normal form.
inline std::size_t syllable_length(const Word& w) { return w.size(); }

enum class SyllableType { identity, g_even, h_even, g_odd, h_odd };
std::string_view to_string(SyllableType t);

/// Type relative to the two top-level factors: factor 0 plays G, factor 1 H.
SyllableType syllable_type(const Word& w);

class FreeProduct;
using FreeProductPtr = std::shared_ptr<const FreeProduct>;

struct Generator {
  std::string name;
  Letter letter;
};

class FreeProduct {
 public:
  /// `generators` names factor elements; names must be distinct.
  FreeProduct(std::vector<FactorGroupPtr> factors, std::vector<Generator> generators);

  std::size_t factor_count() const { return factors_.size(); }
  const FactorGroup& factor(std::size_t i) const { return *factors_.at(i); }
  const FactorGroupPtr& factor_ptr(std::size_t i) const { return factors_.at(i); }
  std::span<const Generator> generators() const { return generators_; }
  const Generator* find_generator(std::string_view name) const;

  /// Word of a single factor element (empty for the identity).
  Word letter(std::size_t factor, Element e) const;
  Word generator(std::string_view name) const;

  /// Letter-level product; throws std::invalid_argument for distinct factors.
  Element multiply_letters(Letter a, Letter b) const;

  Word multiply(const Word& x, const Word& y) const;
  Word multiply(std::span<const Word> factors) const;
  Word inverse(const Word& x) const;
  Word power(const Word& x, std::int64_t k) const;

  /// Number of letters of x and of y consumed by cancellation when forming xy,
  /// and whether absorption then happened.  Cancellation count c means the
  /// last c letters of x and first c of y annihilated.
  struct Junction {
    std::size_t cancelled = 0;
    bool absorbed = false;
    Letter merged;
  };
  Junction junction(std::span<const Letter> x, std::span<const Letter> y) const;

  /// Word text syntax: whitespace separated `name^exp` tokens, `e` = identity.
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;
  std::vector<Token> tokens(const Word& w) const;
  /// format() when the generators can spell w, else a raw letter listing.
  std::string describe(const Word& w) const;

  /// Reduces an arbitrary letter sequence (identities allowed, adjacent
  /// letters possibly in the same factor) to normal form.
  Word reduce(std::span<const Letter> letters) const;

 private:
  std::vector<FactorGroupPtr> factors_;
  std::vector<Generator> generators_;
  std::vector<std::vector<NamedElement>> factor_generators_;
};

/// Thrown by FreeProduct::parse with the offending token position.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// gamma * x * gamma^-1.
Word conjugate(const FreeProduct& fp, const Word& gamma, const Word& x);

struct CyclicReduction {
  Word conjugator;  ///< x == conjugator * core * conjugator^-1
  Word core;
};
CyclicReduction cyclic_reduce(const FreeProduct& fp, const Word& x);

/// Order of a word: cyclically reduced cores of length >= 2 have infinite
/// order, single letters inherit their factor order.
Order word_order(const FreeProduct& fp, const Word& x);

struct PrimitiveRoot {
  Word root;
  std::int64_t exponent = 1;
};
/// x == root^exponent with root not a proper power.  Throws
/// std::invalid_argument for the identity and for finite-order words.
PrimitiveRoot primitive_root(const FreeProduct& fp, const Word& x);

/// Some k with root^k == x, or nullopt.  Exact when root's cyclic core has
/// length >= 2; otherwise delegates to the factor backend.
std::optional<std::int64_t> power_index(const FreeProduct& fp, const Word& x, const Word& root);

// ---------------------------------------------------------------------------
// Factor backends built on words.

/// A free product used as a factor of a larger free product.
class NestedFreeProductGroup final : public FactorGroup {
 public:
  explicit NestedFreeProductGroup(FreeProductPtr inner);
  const FreeProduct& inner() const { return *inner_; }
  Element make(const Word& w) const { return table_.intern(w); }
  const Word& word(Element g) const { return table_.at(g); }

  GroupKind kind() const override { return GroupKind::free_product; }
  Element multiply(Element g, Element h) const override;
  Element inverse(Element g) const override;
  Order order(Element g) const override;
  bool is_finite() const override;
  std::string encode(Element g) const override;
  Element decode(std::string_view bytes) const override;
  nlohmann::json to_json(Element g) const override;
  Element from_json(const nlohmann::json& j) const override;
  std::vector<Token> express(Element g, std::span<const NamedElement> gens) const override;
  std::optional<std::int64_t> power_index(Element g, Element root) const override;

 private:
  FreeProductPtr inner_;
  InternTable<Word, WordHash> table_;
};

/// (base word, z exponent) with componentwise multiplication: base x Z.
struct WordWithZ {
  Word base;
  std::int64_t z = 0;
  friend bool operator==(const WordWithZ&, const WordWithZ&) = default;
};
struct WordWithZHash {
  std::size_t operator()(const WordWithZ& p) const;
};

class DirectProductWithIntegers final : public FactorGroup {
 public:
  DirectProductWithIntegers(FreeProductPtr base, std::string z_name);
  const FreeProduct& base() const { return *base_; }
  const std::string& z_name() const { return z_name_; }
  Element make(const Word& w, std::int64_t z) const { return table_.intern({w, z}); }
  const WordWithZ& pair(Element g) const { return table_.at(g); }

  GroupKind kind() const override { return GroupKind::direct_product_with_integers; }
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
  FreeProductPtr base_;
  std::string z_name_;
  InternTable<WordWithZ, WordWithZHash> table_;
};

/// Injective byte encoding of a word (length-prefixed factor indices and
/// backend encodings).  The identity encodes as the single byte 0x00.
std::string canonical_encode(const FreeProduct& fp, const Word& w);
Word canonical_decode(const FreeProduct& fp, std::string_view bytes);

}  // namespace fpg

#pragma once

// Finite subsets of a free product and their products.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "fpg/free_product.hpp"

namespace fpg {

using Rational = boost::rational<std::int64_t>;

/// "p/q", or "p" for integers.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

/// Deduplicated words of one ambient group, sorted by canonical encoding.
class WordSet {
 public:
  WordSet() = default;
  WordSet(FreeProductPtr ambient, std::vector<Word> words);

  const FreeProduct& group() const { return *ambient_; }
  const FreeProductPtr& ambient() const { return ambient_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  std::span<const Word> words() const { return words_; }
  const Word& operator[](std::size_t i) const { return words_[i]; }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }

  bool contains(const Word& w) const;
  /// Position in canonical order, or nullopt.
  std::optional<std::size_t> index_of(const Word& w) const;
  const std::string& encoding(std::size_t i) const { return encodings_[i]; }

  friend bool operator==(const WordSet& a, const WordSet& b) { return a.words_ == b.words_; }

 private:
  FreeProductPtr ambient_;
  std::vector<Word> words_;
  std::vector<std::string> encodings_;
};

/// One word per line; blank lines and '#' comments skipped.  Errors carry the
/// line number.  Throws ParseError on an empty set.
WordSet parse_word_set(const FreeProductPtr& ambient, std::string_view text);
WordSet read_word_set(const FreeProductPtr& ambient, const std::filesystem::path& path);
std::string format_word_set(const WordSet& a);

/// Throws std::invalid_argument unless both sets share an ambient group.
void check_same_ambient(const WordSet& a, const WordSet& b);

WordSet product(const WordSet& a, const WordSet& b);
WordSet power_set(const WordSet& a, int n);
WordSet conjugate(const WordSet& a, const Word& gamma);

/// |{l * r}| computed without materializing the products: each product is
/// described by its junction against the two operands and hashed from cached
/// prefix/suffix hashes, with exact letter comparison on hash matches.
/// `distinct`, when given, receives one representative word per product.
std::size_t count_products(const FreeProduct& fp, std::span<const Word> left, std::span<const Word> right,
                           std::vector<Word>* distinct = nullptr);

struct GrowthSizes {
  std::size_t set_size = 0, sq = 0, cube = 0;
};
/// |A|, |A^2|, |A^3| by lazy enumeration.
GrowthSizes growth_sizes(const WordSet& a);

/// Smallest X with A^2 contained in X*A.
struct TranslateCover {
  std::size_t k = 0;
  WordSet x;
  bool exact = false;
};
TranslateCover min_translate_cover(const WordSet& a, std::size_t exact_limit = 64);
bool cover_validates(const WordSet& a, const WordSet& x);

}  // namespace fpg

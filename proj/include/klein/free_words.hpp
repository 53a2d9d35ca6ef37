#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace klein {

/// A finite set of named generators. Words over different alphabets never mix.
///
/// Names are matched greedily when parsing, and an upper-case single-letter
/// name denotes the inverse of its lower-case generator ("A" == "a^-1").
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);

  std::size_t rank() const { return names_.size(); }
  const std::string& name(int gen) const { return names_.at(static_cast<std::size_t>(gen)); }
  std::optional<int> find(std::string_view name) const;

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

  /// {a, g}: the free subgroup generated by alpha and gamma.
  static const Alphabet& f2();
  /// {a, b}: BS(1,-1), and also G1 (alpha, beta).
  static const Alphabet& ab();
  /// {a, b, g}: G2 (alpha, beta, gamma).
  static const Alphabet& g2();

 private:
  std::vector<std::string> names_;
};

/// A single generator letter with exponent +1 or -1. Sequences of letters are
/// "raw" words: they are not reduced.
struct Letter {
  int gen = 0;
  int exp = 1;
  bool operator==(const Letter&) const = default;
};

/// A run g^e of one generator, e != 0.
struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;
  bool operator==(const Syllable&) const = default;
  auto operator<=>(const Syllable&) const = default;
};

/// Freely reduced word, stored run-length compressed.
///
/// Adjacent syllables always have distinct generators and nonzero exponents;
/// the empty sequence is the identity.
class ReducedWord {
 public:
  explicit ReducedWord(const Alphabet& alphabet) : alphabet_(&alphabet) {}

  static ReducedWord generator(const Alphabet& alphabet, int gen, std::int64_t exp = 1);
  static ReducedWord from_syllables(const Alphabet& alphabet, std::span<const Syllable> syllables);
  static ReducedWord from_letters(const Alphabet& alphabet, std::span<const Letter> letters);

  const Alphabet& alphabet() const { return *alphabet_; }
  std::span<const Syllable> syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }

  /// Number of letters, i.e. the sum of |exponent| over syllables.
  std::int64_t length() const;

  ReducedWord inverse() const;
  std::vector<Letter> letters() const;

  /// Appends g^e and reduces against the tail.
  void append(int gen, std::int64_t exp);

  bool operator==(const ReducedWord& other) const {
    return *alphabet_ == *other.alphabet_ && syllables_ == other.syllables_;
  }
  /// Arbitrary but total; used for ordered containers only.
  std::strong_ordering operator<=>(const ReducedWord& other) const {
    return syllables_ <=> other.syllables_;
  }

 private:
  const Alphabet* alphabet_;
  std::vector<Syllable> syllables_;
};

/// Freely reduced product u*v. Throws std::invalid_argument on alphabet mismatch.
ReducedWord concat_reduce(const ReducedWord& u, const ReducedWord& v);

/// Sum of the alpha-exponents of a word over Alphabet::f2().
std::int64_t sigma(const ReducedWord& w);

/// Phi^n(w) where Phi fixes alpha and inverts gamma.
ReducedWord phi_power(const ReducedWord& w, std::int64_t n);

/// "a^2 g^-1"; the identity is "e".
std::string to_string(const ReducedWord& w);

/// Parses the syntax produced by to_string. Also accepts juxtaposed letters
/// ("bab"), upper case for inverses, and "e" or "" for the identity.
/// Throws std::invalid_argument with the offending position.
std::vector<Letter> parse_letters(const Alphabet& alphabet, std::string_view text);
ReducedWord parse_word(const Alphabet& alphabet, std::string_view text);

/// All freely reduced words of length exactly `length`, in a fixed order.
std::vector<ReducedWord> enumerate_reduced_words(const Alphabet& alphabet, int length);
/// All raw letter sequences of length exactly `length` over generators and inverses.
std::vector<std::vector<Letter>> enumerate_raw_words(const Alphabet& alphabet, int length);

// ---------------------------------------------------------------------------
// Magnus expansion

/// Monomial in the noncommuting indeterminates X (letter 0) and Y (letter 1).
/// The first letter is the most significant bit of `bits`.
struct Monomial {
  std::uint8_t degree = 0;
  std::uint64_t bits = 0;

  /// Degree first, then lexicographic with X < Y.
  auto operator<=>(const Monomial&) const = default;

  Monomial times(int letter) const {
    return Monomial{static_cast<std::uint8_t>(degree + 1), (bits << 1) | static_cast<std::uint64_t>(letter)};
  }
  std::string to_string() const;
};

/// Integer power series in X, Y with every monomial of degree > max_degree dropped.
class TruncatedSeries {
 public:
  static constexpr int kMaxSupportedDegree = 24;

  explicit TruncatedSeries(int max_degree);
  static TruncatedSeries one(int max_degree);

  int max_degree() const { return max_degree_; }
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(const Monomial& m) const;
  void add(const Monomial& m, std::int64_t c);

  bool is_one() const;
  bool operator==(const TruncatedSeries&) const = default;

  std::string to_string() const;

 private:
  int max_degree_;
  std::map<Monomial, std::int64_t> terms_;
};

/// Truncated product of two series with the same max_degree.
TruncatedSeries multiply(const TruncatedSeries& s, const TruncatedSeries& t);

/// alpha -> 1 + X, gamma -> 1 + Y, inverses -> sum_k (-X)^k, truncated.
TruncatedSeries magnus_expand(const ReducedWord& w, int max_degree);

/// Magnus order on F2: u < v iff the lowest nonzero coefficient of
/// M(u^-1 v) - 1 is positive. Truncation degree is max(1, |u| + |v|).
std::strong_ordering f2_compare(const ReducedWord& u, const ReducedWord& v);

}  // namespace klein

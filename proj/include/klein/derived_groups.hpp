#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "klein/free_words.hpp"

namespace klein {

// ---------------------------------------------------------------------------
// G2 = <alpha, beta, gamma | alpha beta alpha^-1 = beta^-1, beta gamma beta^-1 = gamma^-1>

/// Normal form w beta^n with w a reduced word over Alphabet::f2().
struct G2Element {
  ReducedWord w{Alphabet::f2()};
  std::int64_t n = 0;

  G2Element() = default;
  G2Element(ReducedWord word, std::int64_t beta_exp);

  bool operator==(const G2Element&) const = default;
};

/// (w, n)(w', n') = (w Phi^n(w'), (-1)^sigma(w') n + n').
G2Element g2_multiply(const G2Element& x, const G2Element& y);
G2Element g2_inverse(const G2Element& x);
G2Element g2_power(const G2Element& x, std::int64_t n);

/// Pushes every beta-letter of a raw word over Alphabet::g2() to the right with
///   beta^e alpha^d -> alpha^d beta^-e,   beta^e gamma^d -> gamma^-d beta^e.
G2Element g2_rewrite(std::span<const Letter> word);
G2Element g2_rewrite(const ReducedWord& word);

/// The recipe from the normal-form uniqueness argument, taken literally: each
/// alpha^{+-1} with an odd number of beta^{+-1} to its left is inverted, then
/// betas are deleted and the result reduced. gamma-letters are left alone.
/// This is a cross-check only; it does not agree with g2_rewrite in general.
ReducedWord g2_omega(std::span<const Letter> word);
ReducedWord g2_omega(const ReducedWord& word);

/// The word w beta^n over Alphabet::g2().
ReducedWord g2_word(const G2Element& x);

/// sigma(w beta^n) = sigma(w).
std::int64_t g2_sigma(const G2Element& x);
/// eta(w beta^n) = n.
inline std::int64_t g2_eta(const G2Element& x) { return x.n; }

/// Left-invariant order on G2. g > e iff sigma(g) > 0, or sigma(g) = 0 and
/// eta(g) > 0, or both vanish and w(g) > e in the Magnus order on F2.
class G2Order {
 public:
  G2Order() = default;

  bool is_positive(const G2Element& g) const;
  /// Sign of x^-1 y against the identity: x < y iff x^-1 y > e.
  std::strong_ordering compare(const G2Element& x, const G2Element& y) const;
};

std::strong_ordering g2_compare(const G2Element& x, const G2Element& y, const G2Order& order = {});

// ---------------------------------------------------------------------------
// G1 = <alpha, beta | beta alpha^2 beta^-1 = alpha^-2, alpha beta^2 alpha^-1 = beta^-2>

using Rational = boost::multiprecision::cpp_rational;

/// Sign pattern of a diagonal linear part with determinant +1.
enum class SignDiagonal : std::uint8_t {
  ppp,  ///< (+,+,+)
  pmm,  ///< (+,-,-)
  mpm,  ///< (-,+,-)
  mmp,  ///< (-,-,+)
};

/// x -> L x + t with L a sign diagonal and t rational.
class AffineIso3 {
 public:
  AffineIso3() = default;
  AffineIso3(SignDiagonal linear, std::array<Rational, 3> translation);

  static AffineIso3 identity() { return {}; }

  SignDiagonal linear() const { return linear_; }
  int sign(int axis) const;
  const std::array<Rational, 3>& translation() const { return translation_; }

  bool is_identity() const;
  bool is_translation() const { return linear_ == SignDiagonal::ppp; }
  AffineIso3 inverse() const;
  std::array<Rational, 3> apply(const std::array<Rational, 3>& x) const;

  bool operator==(const AffineIso3&) const = default;
  /// Total order for ordered containers.
  bool operator<(const AffineIso3& other) const;

 private:
  SignDiagonal linear_ = SignDiagonal::ppp;
  std::array<Rational, 3> translation_{};
};

/// f o g.
AffineIso3 affine_compose(const AffineIso3& f, const AffineIso3& g);
AffineIso3 affine_power(const AffineIso3& f, std::int64_t n);
/// g f g^-1.
AffineIso3 affine_conjugate(const AffineIso3& g, const AffineIso3& f);

std::string to_string(SignDiagonal d);
SignDiagonal parse_sign_diagonal(std::string_view text);

enum class G1Generator { alpha, beta };

/// alpha = ((+,-,-), (1/2, 0, 0)), beta = ((-,+,-), (0, 1/2, 1/2)).
AffineIso3 g1_generator(G1Generator which);

/// Evaluates a word over Alphabet::ab() (a = alpha, b = beta).
AffineIso3 g1_evaluate(std::span<const Letter> word);
AffineIso3 g1_evaluate(const ReducedWord& word);

/// std::nullopt means infinite order. Powers up to 6 are checked; a finite
/// order in this linear-part group must divide 4.
std::optional<int> g1_element_order(const AffineIso3& f);

/// Translation denominators all divide 2.
bool in_half_integer_lattice(const AffineIso3& f);

}  // namespace klein

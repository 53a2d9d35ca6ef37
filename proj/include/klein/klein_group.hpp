#pragma once

#include <cstdint>
#include <span>

#include "klein/free_words.hpp"

namespace klein {

/// Element a^p b^q of BS(1,-1) = <a, b | a b a^-1 = b^-1>. Every pair is a
/// valid normal form; (0, 0) is the identity.
struct BsElement {
  std::int64_t p = 0;
  std::int64_t q = 0;

  bool operator==(const BsElement&) const = default;
  auto operator<=>(const BsElement&) const = default;

  static BsElement a(std::int64_t p = 1) { return {p, 0}; }
  static BsElement b(std::int64_t q = 1) { return {0, q}; }
};

/// (p, q)(p', q') = (p + p', (-1)^p' q + q'). Throws std::overflow_error.
BsElement bs_multiply(const BsElement& x, const BsElement& y);
BsElement bs_inverse(const BsElement& x);
/// x^n for any integer n, by repeated squaring.
BsElement bs_power(const BsElement& x, std::int64_t n);

/// Rewrites a raw word over Alphabet::ab() into normal form by pushing every
/// b-letter to the right (b^e a^d -> a^d b^-e), then collecting exponents.
/// Independent of bs_multiply; tests use it as the oracle for the product law.
BsElement bs_reduce(std::span<const Letter> word);
BsElement bs_reduce(const ReducedWord& word);

/// The word a^p b^q.
ReducedWord bs_word(const BsElement& x);

enum class BsSubgroup {
  even_a_and_b,  ///< <a^2, b>, isomorphic to Z^2
  a_and_even_b,  ///< <a, b^2>, isomorphic to BS(1,-1)
};

bool bs_subgroup_membership(const BsElement& x, BsSubgroup subgroup);

}  // namespace klein

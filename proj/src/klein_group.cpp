#include "klein/klein_group.hpp"

#include <stdexcept>
#include <vector>

#include "klein/checked.hpp"

namespace klein {

BsElement bs_multiply(const BsElement& x, const BsElement& y) {
  return {checked_add(x.p, y.p), checked_add(signed_by_parity(y.p, x.q), y.q)};
}

BsElement bs_inverse(const BsElement& x) {
  return {checked_neg(x.p), checked_neg(signed_by_parity(x.p, x.q))};
}

BsElement bs_power(const BsElement& x, std::int64_t n) {
  BsElement base = n < 0 ? bs_inverse(x) : x;
  // Negating INT64_MIN would overflow; peel one factor off first.
  BsElement result{};
  if (n == INT64_MIN) {
    result = base;
    n = INT64_MAX;
  } else if (n < 0) {
    n = -n;
  }
  while (n > 0) {
    if (n & 1) result = bs_multiply(result, base);
    n >>= 1;
    if (n > 0) base = bs_multiply(base, base);
  }
  return result;
}

namespace {

constexpr int kA = 0;
constexpr int kB = 1;

}  // namespace

BsElement bs_reduce(std::span<const Letter> word) {
  std::vector<Letter> letters(word.begin(), word.end());
  for (const auto& l : letters) {
    if (l.gen != kA && l.gen != kB) throw std::invalid_argument("bs_reduce: letter outside {a, b}");
    if (l.exp != 1 && l.exp != -1) throw std::invalid_argument("bs_reduce: raw letters must have exponent +-1");
  }
  // Bubble each b^e past the a-letter to its right: b^e a^d = a^d b^-e.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i].gen == kB && letters[i + 1].gen == kA) {
        const Letter b = letters[i];
        letters[i] = letters[i + 1];
        letters[i + 1] = {kB, -b.exp};
        changed = true;
      }
    }
  }
  BsElement out;
  for (const auto& l : letters) {
    if (l.gen == kA) {
      out.p = checked_add(out.p, l.exp);
    } else {
      out.q = checked_add(out.q, l.exp);
    }
  }
  return out;
}

BsElement bs_reduce(const ReducedWord& word) {
  if (!(word.alphabet() == Alphabet::ab())) throw std::invalid_argument("bs_reduce: word must be over {a, b}");
  return bs_reduce(word.letters());
}

ReducedWord bs_word(const BsElement& x) {
  ReducedWord w(Alphabet::ab());
  w.append(kA, x.p);
  w.append(kB, x.q);
  return w;
}

bool bs_subgroup_membership(const BsElement& x, BsSubgroup subgroup) {
  switch (subgroup) {
    case BsSubgroup::even_a_and_b:
      return x.p % 2 == 0;
    case BsSubgroup::a_and_even_b:
      return x.q % 2 == 0;
  }
  return false;
}

}  // namespace klein

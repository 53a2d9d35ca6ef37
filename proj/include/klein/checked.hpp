#pragma once

#include <cstdint>
#include <stdexcept>

namespace klein {

// Exponent arithmetic for normal forms. Wraparound would silently produce a
// different group element, so every operation reports overflow.

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) {
    throw std::overflow_error("exponent overflow in addition");
  }
  return out;
}

inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_sub_overflow(x, y, &out)) {
    throw std::overflow_error("exponent overflow in subtraction");
  }
  return out;
}

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) {
    throw std::overflow_error("exponent overflow in multiplication");
  }
  return out;
}

inline std::int64_t checked_neg(std::int64_t x) { return checked_sub(0, x); }

// (-1)^n * x
inline std::int64_t signed_by_parity(std::int64_t n, std::int64_t x) {
  return (n % 2 == 0) ? x : checked_neg(x);
}

}  // namespace klein

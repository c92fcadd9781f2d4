#pragma once
// Small helpers around the builtin 128-bit integer type: checked 64-bit
// multiplication for hot paths that must not overflow silently, and decimal
// formatting (iostreams cannot print __int128 directly).

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hmlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x = neg ? (u128)(-(v + 1)) + 1 : (u128)v;
  char buf[48];
  int i = 48;
  while (x > 0) {
    buf[--i] = char('0' + (int)(x % 10));
    x /= 10;
  }
  std::string s(buf + i, 48 - i);
  return neg ? "-" + s : s;
}

// Product of two i64 as i128; always safe.
inline i128 wmul(i64 a, i64 b) { return (i128)a * (i128)b; }

// i64 * i64 with overflow check; throws std::overflow_error.
inline i64 mul_checked(i64 a, i64 b) {
  i128 p = wmul(a, b);
  if (p > INT64_MAX || p < INT64_MIN) {
    throw std::overflow_error("mul_checked: 64-bit overflow: " + std::to_string(a) +
                              " * " + std::to_string(b));
  }
  return (i64)p;
}

// Narrow i128 -> i64 with range check.
inline i64 narrow_checked(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("narrow_checked: value out of i64 range: " + to_string_i128(v));
  }
  return (i64)v;
}

}  // namespace hmlab

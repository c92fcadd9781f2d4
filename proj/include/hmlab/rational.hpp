#pragma once
// Exact fractions on 128-bit integers. Enough for the finite products used
// here (local density factors, divisor-count ratios, residue-class weights);
// numerators stay far below 2^127 in every use, and reduction keeps them small.

#include <stdexcept>
#include <string>

#include "hmlab/int128.hpp"

namespace hmlab {

struct Rat {
  i128 num = 0;
  i128 den = 1;  // always > 0 after normalize()

  Rat() = default;
  Rat(i128 n) : num(n), den(1) {}
  Rat(i128 n, i128 d) : num(n), den(d) { normalize(); }

  static i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      den = 1;
      return;
    }
    i128 g = gcd128(num, den);
    num /= g;
    den /= g;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

  long double to_ld() const { return (long double)num / (long double)den; }

  std::string str() const {
    if (den == 1) return to_string_i128(num);
    return to_string_i128(num) + "/" + to_string_i128(den);
  }
};

}  // namespace hmlab

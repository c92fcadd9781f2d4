// Hilbert symbols by the classical closed formulas; no point search anywhere.
//
// Real place:   (a,b) = -1  iff  a < 0 and b < 0.
//
// Odd prime p:  write a = p^alpha * u, b = p^beta * w with p coprime to u, w.
//   (a,b)_p = (-1)^{alpha beta (p-1)/2} (u/p)^beta (w/p)^alpha
// where (./p) is the Legendre symbol.
//
// p = 2:        write a = 2^alpha * u, b = 2^beta * w with u, w odd.
//   (a,b)_2 = (-1)^{eps(u) eps(w) + alpha omega(w) + beta omega(u)}
// with eps(u) = (u-1)/2 mod 2 (u = 3 mod 4) and omega(u) = (u^2-1)/8 mod 2
// (u = 3,5 mod 8). Signs matter: the classes of u, w mod 8 carry them.

#include <stdexcept>

#include "hmlab/nt.hpp"

namespace hmlab::nt {

namespace {

// (u-1)/2 mod 2 for odd u, sign-correct.
inline int eps2(i64 u) { return mod_floor(u, 4) == 3 ? 1 : 0; }

// (u^2-1)/8 mod 2 for odd u, sign-correct.
inline int omega2(i64 u) {
  i64 r = mod_floor(u, 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

inline int legendre_of_unit(i64 u, i64 p) {
  int s = jacobi(u, p);
  if (s == 0) throw std::logic_error("hilbert: unit not coprime to p");
  return s;
}

int hilbert_from_parts(int alpha, i64 u, int beta, i64 w, i64 p) {
  if (p == 2) {
    int e = (eps2(u) & eps2(w)) ^ ((alpha & 1) & omega2(w)) ^ ((beta & 1) & omega2(u));
    return e ? -1 : 1;
  }
  int s = 1;
  if ((alpha & 1) && (beta & 1) && mod_floor(p, 4) == 3) s = -s;
  if (beta & 1) s *= legendre_of_unit(u, p);
  if (alpha & 1) s *= legendre_of_unit(w, p);
  return s;
}

}  // namespace

int hilbert_symbol(i64 a, i64 b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: entries must be nonzero");
  if (v.is_real) return (a < 0 && b < 0) ? -1 : 1;
  i64 p = v.p;
  if (p < 2 || !is_prime((u64)p)) {
    throw std::invalid_argument("hilbert_symbol: place must be real or a prime");
  }
  auto [alpha, u] = split_valuation(a, p);
  auto [beta, w] = split_valuation(b, p);
  return hilbert_from_parts(alpha, u, beta, w, p);
}

int hilbert_symbol_split(i64 a0, i64 a1, i64 b0, i64 b1, const Place& v) {
  if (a0 == 0 || a1 == 0 || b0 == 0 || b1 == 0) {
    throw std::invalid_argument("hilbert_symbol_split: entries must be nonzero");
  }
  if (v.is_real) {
    bool aneg = (a0 < 0) != (a1 < 0);
    bool bneg = (b0 < 0) != (b1 < 0);
    return (aneg && bneg) ? -1 : 1;
  }
  i64 p = v.p;
  auto [va0, ua0] = split_valuation(a0, p);
  auto [va1, ua1] = split_valuation(a1, p);
  auto [vb0, ub0] = split_valuation(b0, p);
  auto [vb1, ub1] = split_valuation(b1, p);
  int alpha = va0 + va1;
  int beta = vb0 + vb1;
  if (p == 2) {
    i64 u = (mod_floor(ua0, 8) * mod_floor(ua1, 8)) % 8;
    i64 w = (mod_floor(ub0, 8) * mod_floor(ub1, 8)) % 8;
    return hilbert_from_parts(alpha, u, beta, w, 2);
  }
  // Units enter only through Legendre symbols, so reduce mod p up front.
  i64 u = (i64)mulmod((u64)mod_floor(ua0, p), (u64)mod_floor(ua1, p), (u64)p);
  i64 w = (i64)mulmod((u64)mod_floor(ub0, p), (u64)mod_floor(ub1, p), (u64)p);
  return hilbert_from_parts(alpha, u, beta, w, p);
}

}  // namespace hmlab::nt

#pragma once
// Integer number theory primitives: factorization (deterministic Miller-Rabin +
// Brent rho above a trial-division floor), p-adic valuations, squarefree
// decomposition, the classical multiplicative functions, Jacobi symbols and
// Hilbert symbols at the real place and at finite primes.
//
// Conventions used throughout the library:
//   * inputs are signed 64-bit, |n| <= 2^62 for factorize;
//   * n = 0 is rejected wherever a nonzero integer is required
//     (std::invalid_argument);
//   * the "unit" returned by split_valuation carries the sign of n.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hmlab/int128.hpp"

namespace hmlab::nt {

using hmlab::i128;
using hmlab::i64;
using hmlab::u128;
using hmlab::u64;

inline constexpr i64 kFactorizeLimit = (i64{1} << 62);

// ------------------------------------------------------------ basic modular --

inline u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

i64 gcd(i64 a, i64 b);

// Reduce a into [0, m) for m > 0, correct for negative a.
inline i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mod_floor128(i128 a, i64 m) {
  i128 r = a % m;
  return (i64)(r < 0 ? r + m : r);
}

// ------------------------------------------------------------- factorization --

struct PrimePower {
  i64 p;
  int e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// sign * prod p_i^{e_i} with p_1 < p_2 < ...; never represents 0.
struct FactoredInt {
  int sign = 1;  // +1 or -1
  std::vector<PrimePower> factors;

  i64 value() const;               // recomposes; throws on 64-bit overflow
  i64 abs_value() const;
  bool is_unit() const { return factors.empty(); }
};

bool is_prime(u64 n);              // deterministic for all 64-bit n
FactoredInt factorize(i64 n);      // pre: n != 0, |n| <= 2^62

// All positive divisors of |n|, unsorted unless sorted=true.
std::vector<i64> divisors(const FactoredInt& f, bool sorted = false);

// ------------------------------------------------------------- valuations ----

// v = max k with p^k | n, and the cofactor u = n / p^v (keeps the sign of n).
struct ValuationSplit {
  int v;
  i64 unit;
  friend bool operator==(const ValuationSplit&, const ValuationSplit&) = default;
};

ValuationSplit split_valuation(i64 n, i64 p);  // pre: n != 0, p >= 2
inline int valuation(i64 n, i64 p) { return split_valuation(n, p).v; }

// n = b^2 * c with b > 0 and c squarefree carrying the sign of n.
struct SquarefreeSplit {
  i64 b;
  i64 c;
  friend bool operator==(const SquarefreeSplit&, const SquarefreeSplit&) = default;
};

SquarefreeSplit squarefree_decompose(i64 n);              // pre: n != 0
SquarefreeSplit squarefree_decompose(const FactoredInt&);

i64 squarefree_kernel(i64 n);  // the |c| above (radical of the odd exponents)

// ------------------------------------------------ classical multiplicative ---

i64 tau(const FactoredInt&);
int mobius(const FactoredInt&);   // 0 unless squarefree
i64 phi(const FactoredInt&);
i64 tau(i64 n);
int mobius(i64 n);
i64 phi(i64 n);

struct ClassicalValues {
  i64 tau;
  int mobius;
  i64 phi;
  friend bool operator==(const ClassicalValues&, const ClassicalValues&) = default;
};
ClassicalValues classical_multiplicative(i64 n);  // pre: n >= 1

// ------------------------------------------------------------------ symbols --

// Jacobi symbol (a/n): n odd positive; 0 when gcd(a,n) > 1; periodic in a mod n.
int jacobi(i64 a, i64 n);  // throws std::invalid_argument on even or nonpositive n

// Jacobi symbol with a 128-bit numerator (reduced mod n first).
int jacobi128(i128 a, i64 n);

// A place of the rationals: the real place or a finite prime.
struct Place {
  bool is_real;
  i64 p;  // meaningful only when !is_real
  static Place real() { return {true, 0}; }
  static Place prime(i64 p) { return {false, p}; }
  friend bool operator==(const Place&, const Place&) = default;
};

// Hilbert symbol (a,b)_v in {+1,-1}: whether a x^2 + b y^2 = z^2 has a
// nontrivial solution over the completion at v. Closed formulas only, no
// search. pre: a != 0, b != 0; v real or prime.
int hilbert_symbol(i64 a, i64 b, const Place& v);

// Hilbert symbol (a0*a1, b0*b1)_v without forming the products, so factors up
// to 2^62 are safe. Used by the conic layer where entries are products t_i*t_j.
int hilbert_symbol_split(i64 a0, i64 a1, i64 b0, i64 b1, const Place& v);

// Square root of a modulo odd prime p (Tonelli-Shanks). Returns nullopt when a
// is a non-residue; residue-ness is decided by Euler's criterion (powmod), and
// any returned root is verified by squaring, so this routine is independent of
// the Jacobi-symbol code path above.
std::optional<u64> sqrt_mod_prime(u64 a, u64 p);

}  // namespace hmlab::nt

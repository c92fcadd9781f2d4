// Complete bounded witness search.
//
// On the positive arrangement A X^2 + B Y^2 = C Z^2 (A, B, C >= 1 pairwise
// coprime squarefree), a soluble equation has a solution with |Z| <= sqrt(AB);
// |X| <= sqrt(BC) and |Y| <= sqrt(AC) then follow from the equation itself.
// The search enumerates Z = 1..floor(sqrt(AB)) and, for each Z, walks the
// residue classes of X mod B allowed by A X^2 = C Z^2 (mod B). B is
// squarefree, so the classes mod B are CRT products of at most two square
// roots mod each prime p | B, computed once as s_p = sqrt(C/A mod p):
//   p | Z  -> X = 0 (mod p)
//   else   -> X = +- Z s_p (mod p), or no class at all when C/A is a
//             non-residue mod p (that Z is skipped).
// Y is recovered from the exact quotient (C Z^2 - A X^2)/B when it is a
// perfect square. Exhausting Z proves insolubility; nothing is ever guessed.
//
// The routine never evaluates a Hilbert symbol or Legendre-symbol formula;
// square roots mod p are found by Euler/Tonelli with verification. It is the
// independent oracle the solubility tests are measured against.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hmlab/conic.hpp"

namespace hmlab::conic {

namespace {

u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = (u64)std::sqrt((double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square_u64(u64 n, u64& root) {
  root = isqrt_u64(n);
  return root * root == n;
}

struct PosPoint {
  i64 x, y, z;
};

// One modulus-B orientation of the search. Appends to `spent`, throws when it
// passes `budget`.
std::optional<PosPoint> search_core(i64 A, i64 B, i64 C, u64 budget, u64& spent) {
  i64 zmax = (i64)isqrt_u64((u64)A * (u64)B);
  i64 xcap = (i64)isqrt_u64((u64)B * (u64)C);

  // Prime data for the modulus B.
  struct PrimeSlot {
    i64 p;
    i64 s;        // sqrt(C A^{-1}) mod p, valid when has_root
    bool has_root;
    i64 crt;      // (B/p) * ((B/p)^{-1} mod p), the CRT basis element mod B
  };
  std::vector<PrimeSlot> slots;
  for (auto [p, e] : nt::factorize(B).factors) {
    PrimeSlot sl;
    sl.p = p;
    u64 a_mod = (u64)nt::mod_floor(A, p);
    u64 c_mod = (u64)nt::mod_floor(C, p);
    // A is invertible mod p (pairwise coprime).
    u64 ainv = nt::powmod(a_mod, (u64)(p - 2), (u64)p);
    if (p == 2) ainv = 1;
    auto root = nt::sqrt_mod_prime(nt::mulmod(c_mod, ainv, (u64)p), (u64)p);
    sl.has_root = root.has_value();
    sl.s = sl.has_root ? (i64)*root : 0;
    i64 q = B / p;
    u64 qinv = 1;
    if (p > 2) {
      qinv = nt::powmod((u64)nt::mod_floor(q, p), (u64)(p - 2), (u64)p);
    } else {
      qinv = (u64)nt::mod_floor(q, 2);  // q odd, inverse mod 2 is 1
    }
    sl.crt = narrow_checked((i128)q * (i64)qinv % B);
    slots.push_back(sl);
  }
  size_t np = slots.size();

  std::vector<i64> residues(np);
  for (i64 Z = 1; Z <= zmax; ++Z) {
    ++spent;
    if (spent > budget) {
      throw SearchBudgetExceeded("holzer_search: budget exceeded at Z=" + std::to_string(Z));
    }
    // Residue options per prime: 0, 1 or 2 values of X mod p.
    bool dead = false;
    int two_count = 0;
    static thread_local std::vector<int> two_idx;
    two_idx.clear();
    for (size_t i = 0; i < np; ++i) {
      const auto& sl = slots[i];
      i64 zr = nt::mod_floor(Z, sl.p);
      if (zr == 0) {
        residues[i] = 0;
      } else if (!sl.has_root) {
        dead = true;
        break;
      } else {
        i64 r = narrow_checked((i128)zr * sl.s % sl.p);
        residues[i] = r;
        i64 other = r == 0 ? 0 : sl.p - r;
        if (other != r) {
          two_idx.push_back((int)i);
          ++two_count;
        }
      }
    }
    if (dead) continue;

    i128 cz2 = (i128)C * Z * Z;
    i128 base = 0;
    for (size_t i = 0; i < np; ++i) base += (i128)residues[i] * slots[i].crt;
    // Enumerate the sign combinations over primes with two roots.
    for (u64 mask = 0; mask < (1ULL << two_count); ++mask) {
      i128 acc = base;
      // Flip the chosen subset to p - r.
      for (int bi = 0; bi < two_count; ++bi) {
        if (mask & (1ULL << bi)) {
          size_t i = (size_t)two_idx[(size_t)bi];
          acc += (i128)(slots[i].p - 2 * residues[i]) * slots[i].crt;
        }
      }
      i64 x0 = nt::mod_floor128(acc, B);
      for (i64 X = x0; X <= xcap; X += B) {
        i128 n = cz2 - (i128)A * X * X;
        if (n < 0) break;
        ++spent;
        if (spent > budget) {
          throw SearchBudgetExceeded("holzer_search: budget exceeded at Z=" + std::to_string(Z));
        }
        if (n % B != 0) throw std::logic_error("holzer_search: residue class broke divisibility");
        u64 m = (u64)(n / B);
        u64 y;
        if (is_square_u64(m, y)) return PosPoint{X, (i64)y, Z};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

HolzerResult holzer_search(const Triple& t, u64 budget) {
  require_nonzero(t, "holzer_search");
  ReducedConic red = reduce_conic(t);
  u64 spent = 0;

  // Elementary sign screen on the model (no solution over R, hence none
  // over Q). This is the only non-enumerative step.
  if (theta_real(red.abc) == 0) return {false, std::nullopt, spent};

  // Arrange a y0^2 + b y1^2 = c y2^2 into a positive form. First make c > 0
  // (global sign flip), then move a negative coefficient across.
  i64 a = red.abc[0], b = red.abc[1], c = red.abc[2];
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  // (a, b) now cannot be (-,-): that is the real-insoluble pattern.
  i64 A, B, C;
  enum class Shape { kPlain, kSolveA, kSolveB } shape;
  if (a > 0 && b > 0) {
    A = a;
    B = b;
    C = c;
    shape = Shape::kPlain;  // (X, Y, Z) = (y0, y1, y2)
  } else if (a > 0) {
    A = -b;
    B = c;
    C = a;
    shape = Shape::kSolveA;  // -b y1^2 + c y2^2 = a y0^2: (X, Y, Z) = (y1, y2, y0)
  } else {
    A = -a;
    B = c;
    C = b;
    shape = Shape::kSolveB;  // -a y0^2 + c y2^2 = b y1^2: (X, Y, Z) = (y0, y2, y1)
  }

  // Two orientations of the core differ in which variable is sieved; pick
  // the cheaper estimate 2^{omega(modulus)} * (sqrt range sum).
  auto est = [](i64 P, i64 Q, i64 R) {
    int omega = (int)nt::factorize(Q).factors.size();
    return std::ldexp(std::sqrt((double)P * (double)R) + std::sqrt((double)P * (double)Q),
                      omega);
  };
  std::optional<PosPoint> pos;
  if (est(A, B, C) <= est(B, A, C)) {
    pos = search_core(A, B, C, budget, spent);
  } else {
    pos = search_core(B, A, C, budget, spent);
    if (pos) std::swap(pos->x, pos->y);
  }
  if (!pos) return {false, std::nullopt, spent};

  Triple model;
  switch (shape) {
    case Shape::kPlain:
      model = {pos->x, pos->y, pos->z};
      break;
    case Shape::kSolveA:
      model = {pos->z, pos->x, pos->y};
      break;
    case Shape::kSolveB:
      model = {pos->x, pos->z, pos->y};
      break;
  }
  Triple point = red.map_point(model);
  return {true, point, spent};
}

}  // namespace hmlab::conic

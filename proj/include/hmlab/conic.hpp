#pragma once
// Diagonal ternary conics t0 x^2 + t1 y^2 = t2 z^2 with nonzero integer
// coefficients: solubility over the reals, over the p-adics, and over the
// rationals (product of the local tests), a reduction to a pairwise coprime
// squarefree model, a complete bounded search for witness points, and the
// residue-class determinism test used by census predictions.
//
// "Soluble" always means a nontrivial solution (not all coordinates zero);
// solutions with some zero coordinate count.

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "hmlab/nt.hpp"
#include "hmlab/sieve.hpp"

namespace hmlab::conic {

using hmlab::i128;
using hmlab::i64;
using hmlab::u64;

using Triple = std::array<i64, 3>;

// Throws std::invalid_argument when a coefficient is zero.
void require_nonzero(const Triple& t, const char* who);

// Solubility over R: 0 exactly when t0, t1, -t2 all have the same sign.
int theta_real(const Triple& t);

// Solubility over Q_p: 1 iff (t0 t2, t1 t2)_p = 1. Odd p not dividing
// t0 t1 t2 short-circuits to 1 without any symbol work.
int theta_padic(const Triple& t, i64 p);

// Solubility over Q: the real test times the p-adic tests over p | 2 t0 t1 t2
// (all other places are automatically soluble). An optional sieve speeds up
// the factorizations. No point search is involved.
int theta_global(const Triple& t, const nt::FactorSieve* sieve = nullptr);

// ---------------------------------------------------------------- reduction --

// t_i = g * b_i^2 * c_i with c_i squarefree, m_ij = gcd(|c_i|, |c_j|),
// l_i = c_i / (m_ij m_ik). The model conic has coefficients
//   (a, b, c) = (m12 l0, m02 l1, m01 l2),
// pairwise coprime and squarefree, and is soluble over any field containing Q
// exactly when the input is. map_point() pulls a model point back to an
// integer point on the input conic (verified by substitution).
struct ReducedConic {
  Triple input;
  i64 g;                  // gcd(|t0|, |t1|, |t2|)
  std::array<i64, 3> b;   // square parts, b_i > 0
  std::array<i64, 3> c;   // signed squarefree parts of t_i / g
  i64 m01, m02, m12;      // pairwise gcds of |c_i|
  std::array<i64, 3> l;   // signed cofactors
  Triple abc;             // the reduced model coefficients

  Triple map_point(const Triple& model_point) const;
};

ReducedConic reduce_conic(const Triple& t);

// ------------------------------------------------------------- point search --

struct SearchBudgetExceeded : std::runtime_error {
  explicit SearchBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct HolzerResult {
  bool soluble;
  std::optional<Triple> point;  // on the input conic, gcd-reduced, verified
  u64 candidates;               // (z, x)-candidates examined
};

// Complete bounded search on the reduced model: a soluble pairwise coprime
// squarefree conic A X^2 + B Y^2 = C Z^2 (arranged positive) has a solution
// with |Z| <= sqrt(AB), and |X| <= sqrt(BC), |Y| <= sqrt(AC) follow. The
// search enumerates Z and the residue classes of X modulo B fixed by square
// roots mod its prime factors, so exhausting the bound is a proof of
// insolubility, never a guess. Exceeding the budget throws.
// This routine decides solubility with no Hilbert-symbol input whatsoever;
// it is the independent check against theta_global.
HolzerResult holzer_search(const Triple& t, u64 budget = 100000000ULL);

// ------------------------------------------------- residue-class determinism --

// Whether theta_p is constant on the residue class n mod q for every p | q
// (so a census over the class can use a single local value). Requires q
// squarefull with 8 | q. The test per p | q is
//   max(v_p(n0 n2), v_p(n1 n2)) < v_p(q)      (p odd)
//   max(v_2(n0 n2), v_2(n1 n2)) < v_2(q) - 2  (p = 2)
// with v_p(class 0) treated as infinite.
struct Applicability {
  bool applicable;
  std::string reason;  // empty when applicable
};

Applicability residue_class_applicability(const Triple& n, i64 q);

// Validates q squarefull and 8 | q; throws std::invalid_argument otherwise.
void require_squarefull_q(i64 q);

}  // namespace hmlab::conic

#pragma once
// Censuses of soluble diagonal conics t0 x^2 + t1 y^2 = t2 z^2 with positive
// coefficients: exact box/progression counts, Monte Carlo estimates at scales
// beyond exhaustive reach, and the machinery the census decomposition rests
// on — the oscillating divisor-pair sum Theta, the pointwise rewriting of the
// away-from-q solubility product, and the inner lattice sums N/M/E indexed by
// square parts and pairwise gcds.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "hmlab/conic.hpp"
#include "hmlab/rational.hpp"
#include "hmlab/sieve.hpp"

namespace hmlab::census {

using conic::Triple;
using hmlab::i64;
using hmlab::u64;

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// What to count: triples t in [1,B]^3 with gcd(t0,t1,t2) = 1, t = n (mod q),
// and a rational point on the conic. q = 1 (with n = 0) is the plain box
// census. theorem_mode additionally requires q squarefull with 8 | q and the
// residue class deterministic (residue_class_applicability), the setting in
// which the census has a predicted constant. An optional shard (index, total)
// restricts to a deterministic slice whose counts sum exactly to the full
// count over any partition.
struct CensusSpec {
  i64 B = 0;
  i64 q = 1;
  Triple n = {0, 0, 0};
  bool theorem_mode = false;
  std::optional<std::pair<i64, i64>> shard = std::nullopt;
};

// Exact count by enumeration (outer loop t2, parallel over fixed chunks;
// results are worker-count independent). Throws std::invalid_argument on a
// malformed spec and BudgetExceeded when B exceeds 2*10^6 or the lattice has
// more than ~2*10^9 triples.
i64 exhaustive_census(const CensusSpec& spec, const nt::FactorSieve* sieve = nullptr,
                      int workers = 0);

// Unbiased estimate of the same count from `samples` uniform draws over the
// progression lattice (the congruence is met by construction, never by
// rejection). estimate = lattice_size * accepted/samples; standard_error is
// the binomial one. Identical output for identical (spec, samples, seed),
// regardless of worker count. samples = 0 throws.
struct MonteCarloResult {
  long double estimate;
  long double standard_error;
  u64 accepted;
  u64 samples;
};
MonteCarloResult montecarlo_census(const CensusSpec& spec, u64 samples, u64 seed,
                                   const nt::FactorSieve* sieve = nullptr, int workers = 0);

// prod_{p not dividing q} theta_p(t) for a positive triple t and even q: the
// product runs over the odd primes of t0 t1 t2 that do not divide q.
int theta_prime_to_q(const Triple& t, i64 q, const nt::FactorSieve* sieve = nullptr);

// The oscillating sum Theta(a,b,c) for positive a,b,c and even modulus q:
// with a^ = a/gcd(a,q) (and likewise b^, c^), it is the sum over divisor
// pairs u0 u0' = a^, u1 u1' = b^, u2 u2' = c^ — excluding u0u1u2 = 1 and
// u0'u1'u2' = 1, and empty unless gcd(a^ b^ c^, q) = 1 — of the Jacobi
// products (bc|u0) (ac|u1) (-ab|u2). Exact integer; |Theta| <= tau(a^) tau(b^) tau(c^).
i64 theta_correlation(i64 a, i64 b, i64 c, i64 q, const nt::FactorSieve* sieve = nullptr);

// For a,b,c positive, pairwise coprime and squarefree, q even, and u the odd
// radical of abc with u^ = u/gcd(u,q) > 1, the away-from-q solubility product
// satisfies the exact identity
//   prod_{p not dividing q} theta_p(a,b,c) = (1 + h + Theta(a,b,c)) / tau(u^),
// where h = prod_{p | q} (ac, bc)_p; h = 1 gives the (2 + Theta) form. Both
// sides are computed independently (symbol formulas vs divisor-pair sum).
// Throws std::invalid_argument when a precondition fails (in particular when
// u^ = 1, where the two expansion terms collide and the identity is false).
struct PointwiseIdentity {
  bool holds;
  int lhs;       // prod_{p not dividing q} theta_p(a,b,c)
  int h;         // prod_{p | q} (ac,bc)_p
  i64 theta;     // Theta(a,b,c)
  i64 tau_term;  // tau(u / gcd(u,q))
};
PointwiseIdentity pointwise_solubility_identity(i64 a, i64 b, i64 c, i64 q,
                                                const nt::FactorSieve* sieve = nullptr);

// Index of the inner lattice sums: square parts b, pairwise gcds
// m = (m01, m02, m12), residue triple r mod q, and bounds X. Requires
// mu^2(m01 m02 m12) = 1, gcd(b0,b1,b2) = 1, and gcd(m_ij, b_k) = 1.
struct InnerSumIndex {
  std::array<i64, 3> b;
  std::array<i64, 3> m;  // (m01, m02, m12)
  Triple r;
  std::array<i64, 3> X;
};

// The three sums over l with l_i <= X_i, l = r (mod q), mu^2(l0 l1 l2) = 1,
// gcd(l_i, b_j, b_k) = 1, gcd(l0 l1 l2, m01 m02 m12) = 1:
//   N: summand prod_{p not dividing q} theta_p(m12 l0, m02 l1, m01 l2)
//   M: summand tau(gcd(odd(l012), q)) / tau(odd(l012))
//   E: the M summand times Theta(m12 l0, m02 l1, m01 l2)
// N is an exact integer; M and E are exact rationals. Throws BudgetExceeded
// when the progression lattice has more than ~10^8 points.
struct InnerSums {
  i64 N;
  Rat M;
  Rat E;
};
InnerSums evaluate_inner_sums(const InnerSumIndex& idx, i64 q,
                              const nt::FactorSieve* sieve = nullptr);

// Recomputes the theorem-mode census through the exact decomposition
//   N(n,q,B) = [prod_{p|q} theta_p(n)] * sum_{b,m,r} mu^2(m012) N_{b,m,r}(X),
// summing over b with gcd(b0,b1,b2) = 1, m with mu^2(m012) = 1 and
// gcd(m_ij, b_k) = 1, bounds X_i = floor(B / (b_i^2 m_ij m_ik)) >= 1, and all
// r in (Z/q)^3 with b_i^2 m_ij m_ik r_i = n_i (mod q). No truncation is
// involved: the value equals exhaustive_census(spec) exactly.
i64 decomposition_census(const CensusSpec& spec, const nt::FactorSieve* sieve = nullptr);

}  // namespace hmlab::census

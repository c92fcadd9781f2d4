#pragma once
// Generalized divisor functions tau_z and desk-scale verification of the
// leading term of their partial sums (the Selberg--Delange shape
// X (log X)^{z-1} / Gamma(z)), in one and in three variables.
//
// tau_z is the multiplicative function whose Dirichlet series is zeta(s)^z:
// on prime powers tau_z(p^v) = binomial(z+v-1, v), the coefficients of
// (1-x)^{-z}. Values are products of small rationals in z and are computed in
// long double from the exact binomial recurrence.

#include <array>
#include <cstdint>
#include <vector>

#include "hmlab/int128.hpp"
#include "hmlab/rational.hpp"
#include "hmlab/sieve.hpp"

namespace hmlab::sdlab {

using hmlab::i64;
using hmlab::u64;

// Coefficient table for one exponent z: prime_power[v] = tau_z(p^v), the same
// for every prime p.
struct TauZSpec {
  long double z;
  std::array<long double, 64> prime_power;

  explicit TauZSpec(long double z_in);
};

// tau_z(n) from the factorization of n. Throws std::invalid_argument on n = 0.
long double tau_z(u64 n, const TauZSpec& spec);
long double tau_z(u64 n, long double z);

// a0(z) = 1/Gamma(z), the constant in the leading term. Entire in z (zero at
// the poles of Gamma).
long double a0(long double z);

// ------------------------------------------------------------- partial sums --

struct PartialSumResult {
  u64 X;
  long double z;
  long double sum;           // sum_{n<=X} tau_z(n)
  long double leading_term;  // a0(z) * X * (log X)^{z-1}
  long double ratio;         // sum / leading_term
};

// Exact summation by a smallest-prime-factor table walk, sharded over fixed
// n-ranges (results are independent of the worker count). Requires 4 <= X
// <= 2*10^8 (table memory) and z > 0 (so the leading term is nonzero).
PartialSumResult partial_sum_tau_z(u64 X, long double z, int workers = 0);

// Same sum without the leading-term comparison; any X >= 0, any z. Used for
// the convolution decomposition below where X/d may be small. A caller that
// already holds a sieve covering X can pass it to avoid rebuilding.
long double sum_tau_z_upto(u64 X, const TauZSpec& spec, const nt::FactorSieve* sieve = nullptr,
                           int workers = 0);

// --------------------------------------------------------- three variables --

// A finitely supported arithmetic weight g on triples of positive integers,
// with exact rational values so that D_g(1) = sum g(d) / (d0 d1 d2) is exact.
struct FiniteArith3 {
  struct Entry {
    std::array<u64, 3> d;
    Rat value;
  };
  std::vector<Entry> support;

  Rat dirichlet_at_one() const;  // D_g(1), exact
};

struct MultivariateResult {
  std::array<u64, 3> X;
  std::array<long double, 3> z;
  long double sum;           // sum over the box of (tau_z (*) g)
  long double c0;            // D_g(1) * a0(z0) a0(z1) a0(z2)
  long double leading_term;  // c0 * prod_i X_i (log X_i)^{z_i - 1}
  long double ratio;         // sum / leading_term (NaN when leading_term = 0)
};

// Box sum of the coordinatewise Dirichlet convolution
//   (tau_z (*) g)(n) = sum_{d | n} g(d) tau_{z0}(n0/d0) tau_{z1}(n1/d1) tau_{z2}(n2/d2)
// computed exactly through the finite support:
//   sum = sum_d g(d) * prod_i S_{z_i}(floor(X_i / d_i)).
// Requires X_i >= 4, z_i > 0, nonempty support, d_i >= 1.
MultivariateResult multivariate_sum(const std::array<u64, 3>& X,
                                    const std::array<long double, 3>& z, const FiniteArith3& g,
                                    int workers = 0);

}  // namespace hmlab::sdlab

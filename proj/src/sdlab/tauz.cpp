#include "hmlab/sdlab.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "hmlab/nt.hpp"
#include "hmlab/parallel.hpp"

namespace hmlab::sdlab {

TauZSpec::TauZSpec(long double z_in) : z(z_in) {
  // binomial(z+v-1, v) by the recurrence C_v = C_{v-1} * (z+v-1) / v.
  prime_power[0] = 1.0L;
  for (int v = 1; v < 64; ++v) {
    prime_power[v] = prime_power[v - 1] * (z + (long double)(v - 1)) / (long double)v;
  }
}

long double tau_z(u64 n, const TauZSpec& spec) {
  if (n == 0) throw std::invalid_argument("tau_z: n must be positive");
  long double acc = 1.0L;
  for (const auto& pp : nt::factorize((i64)n).factors) acc *= spec.prime_power[pp.e];
  return acc;
}

long double tau_z(u64 n, long double z) { return tau_z(n, TauZSpec(z)); }

long double a0(long double z) {
  long double g = std::tgamma(z);
  if (!std::isfinite(g)) return 0.0L;  // poles of Gamma: 1/Gamma vanishes
  return 1.0L / g;
}

namespace {

// Sum of tau_z over one contiguous range [lo, hi], both ends <= sieve limit.
long double range_sum(u64 lo, u64 hi, const TauZSpec& spec, const nt::FactorSieve& sieve) {
  long double acc = 0.0L;
  for (u64 n = lo; n <= hi; ++n) {
    if (n == 1) {
      acc += 1.0L;
      continue;
    }
    long double t = 1.0L;
    u32 m = (u32)n;
    while (m > 1) {
      u32 p = sieve.spf(m);
      int e = 0;
      do {
        m /= p;
        ++e;
      } while (m > 1 && sieve.spf(m) == p);
      t *= spec.prime_power[e];
    }
    acc += t;
  }
  return acc;
}

}  // namespace

long double sum_tau_z_upto(u64 X, const TauZSpec& spec, const nt::FactorSieve* sieve,
                           int workers) {
  if (X == 0) return 0.0L;
  if (X > 200000000ULL) {
    throw std::invalid_argument("sum_tau_z_upto: X > 2e8 exceeds the table budget");
  }
  if (sieve && sieve->limit() < X) {
    throw std::invalid_argument("sum_tau_z_upto: provided sieve does not cover X");
  }
  std::optional<nt::FactorSieve> own;
  if (!sieve) {
    own.emplace((u32)X);
    sieve = &*own;
  }

  // Fixed chunking keeps the left-to-right fold independent of worker count.
  const u64 kChunk = 1u << 16;
  i64 num_chunks = (i64)((X + kChunk - 1) / kChunk);
  std::vector<long double> sums = par::map_chunks<long double>(num_chunks, workers, [&](i64 c) {
    u64 lo = 1 + (u64)c * kChunk;
    u64 hi = std::min(X, lo + kChunk - 1);
    return range_sum(lo, hi, spec, *sieve);
  });
  long double total = 0.0L;
  for (long double s : sums) total += s;
  return total;
}

PartialSumResult partial_sum_tau_z(u64 X, long double z, int workers) {
  if (X < 4) throw std::invalid_argument("partial_sum_tau_z: X must be >= 4");
  if (!(z > 0.0L)) throw std::invalid_argument("partial_sum_tau_z: z must be positive");
  TauZSpec spec(z);
  PartialSumResult r;
  r.X = X;
  r.z = z;
  r.sum = sum_tau_z_upto(X, spec, nullptr, workers);
  long double lx = std::log((long double)X);
  r.leading_term = a0(z) * (long double)X * std::pow(lx, z - 1.0L);
  r.ratio = r.sum / r.leading_term;
  return r;
}

Rat FiniteArith3::dirichlet_at_one() const {
  Rat acc(0);
  for (const auto& e : support) {
    i64 prod = mul_checked(mul_checked((i64)e.d[0], (i64)e.d[1]), (i64)e.d[2]);
    acc = acc + e.value / Rat(prod);
  }
  return acc;
}

MultivariateResult multivariate_sum(const std::array<u64, 3>& X,
                                    const std::array<long double, 3>& z, const FiniteArith3& g,
                                    int workers) {
  if (g.support.empty()) throw std::invalid_argument("multivariate_sum: empty support");
  u64 xmax = 0;
  for (int i = 0; i < 3; ++i) {
    if (X[i] < 4) throw std::invalid_argument("multivariate_sum: each X_i must be >= 4");
    if (!(z[i] > 0.0L)) throw std::invalid_argument("multivariate_sum: each z_i must be > 0");
    xmax = std::max(xmax, X[i]);
  }
  for (const auto& e : g.support) {
    for (int i = 0; i < 3; ++i) {
      if (e.d[i] == 0) throw std::invalid_argument("multivariate_sum: support entries need d_i >= 1");
    }
  }
  if (xmax > 200000000ULL) {
    throw std::invalid_argument("multivariate_sum: max X_i > 2e8 exceeds the table budget");
  }

  nt::FactorSieve sieve((u32)xmax);
  std::array<TauZSpec, 3> specs{TauZSpec(z[0]), TauZSpec(z[1]), TauZSpec(z[2])};

  MultivariateResult r;
  r.X = X;
  r.z = z;
  r.sum = 0.0L;
  for (const auto& e : g.support) {
    long double term = e.value.to_ld();
    for (int i = 0; i < 3; ++i) {
      term *= sum_tau_z_upto(X[i] / e.d[i], specs[i], &sieve, workers);
    }
    r.sum += term;
  }

  r.c0 = g.dirichlet_at_one().to_ld();
  long double lead = 1.0L;
  for (int i = 0; i < 3; ++i) {
    r.c0 *= a0(z[i]);
    lead *= (long double)X[i] * std::pow(std::log((long double)X[i]), z[i] - 1.0L);
  }
  r.leading_term = r.c0 * lead;
  r.ratio = r.sum / r.leading_term;
  return r;
}

}  // namespace hmlab::sdlab

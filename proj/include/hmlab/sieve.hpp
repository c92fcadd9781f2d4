#pragma once
// Smallest-prime-factor table. Built once, immutable afterwards, safe to share
// across threads. Factorization of n <= limit is a table walk; factorize()
// falls back to the general machinery above the limit.

#include <cstdint>
#include <vector>

#include "hmlab/nt.hpp"

namespace hmlab::nt {

class FactorSieve {
 public:
  explicit FactorSieve(u32 limit);

  u32 limit() const { return limit_; }

  // Smallest prime factor of n, 2 <= n <= limit.
  u32 spf(u32 n) const { return spf_[n]; }

  // Factorization via table walk below the limit, general fallback above.
  FactoredInt factorize(i64 n) const;

  // Appends the distinct prime factors of n (2 <= n <= limit) to out.
  void distinct_primes(u32 n, std::vector<i64>& out) const;

  // mu(n) for 1 <= n <= limit.
  int mobius(u32 n) const;

  const std::vector<i64>& primes() const { return primes_; }

 private:
  u32 limit_;
  std::vector<u32> spf_;
  std::vector<i64> primes_;
};

// Primes <= n by a plain Eratosthenes sieve (independent of FactorSieve).
std::vector<i64> primes_up_to(i64 n);

}  // namespace hmlab::nt

#include "hmlab/sieve.hpp"

#include <stdexcept>

namespace hmlab::nt {

FactorSieve::FactorSieve(u32 limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("FactorSieve: limit must be >= 2");
  spf_.assign((size_t)limit + 1, 0);
  for (u32 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      primes_.push_back((i64)i);
    }
    for (i64 p : primes_) {
      if (p > spf_[i]) break;
      u64 ip = (u64)i * (u64)p;
      if (ip > limit) break;
      spf_[ip] = (u32)p;
    }
  }
}

FactoredInt FactorSieve::factorize(i64 n) const {
  if (n == 0) throw std::invalid_argument("FactorSieve::factorize: n must be nonzero");
  u64 m = n < 0 ? (u64)(-(n + 1)) + 1 : (u64)n;
  if (m > limit_) return hmlab::nt::factorize(n);
  FactoredInt f;
  f.sign = n < 0 ? -1 : 1;
  u32 x = (u32)m;
  while (x > 1) {
    u32 p = spf_[x];
    int e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    f.factors.push_back({(i64)p, e});
  }
  return f;
}

void FactorSieve::distinct_primes(u32 n, std::vector<i64>& out) const {
  while (n > 1) {
    u32 p = spf_[n];
    out.push_back((i64)p);
    while (n % p == 0) n /= p;
  }
}

int FactorSieve::mobius(u32 n) const {
  if (n == 0 || n > limit_) throw std::invalid_argument("FactorSieve::mobius: out of range");
  int k = 0;
  while (n > 1) {
    u32 p = spf_[n];
    n /= p;
    if (n % p == 0) return 0;
    ++k;
  }
  return k % 2 == 0 ? 1 : -1;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> ps;
  if (n < 2) return ps;
  std::vector<bool> comp((size_t)n + 1, false);
  for (i64 i = 2; i <= n; ++i) {
    if (!comp[(size_t)i]) {
      ps.push_back(i);
      if (i <= n / i) {
        for (i64 j = i * i; j <= n; j += i) comp[(size_t)j] = true;
      }
    }
  }
  return ps;
}

}  // namespace hmlab::nt

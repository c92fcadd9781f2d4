// Factorization and the multiplicative basics built on it.
//
// factorize() strategy: strip small primes by trial division (covers the bulk
// of census workloads, where inputs rarely exceed a few million), then split
// what remains with Brent's variant of Pollard rho, certifying primes with a
// Miller-Rabin test that is deterministic over the full 64-bit range.

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hmlab/nt.hpp"

namespace hmlab::nt {

i64 gcd(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 FactoredInt::abs_value() const {
  i64 v = 1;
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) v = mul_checked(v, p);
  return v;
}

i64 FactoredInt::value() const { return sign * abs_value(); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set decides primality for every n < 3.3 * 10^24, hence for all
  // 64-bit inputs.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 brent_rho(u64 n) {
  // pre: n composite, odd, no prime factor below 100.
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [n, c](u64 v) { return (mulmod(v, v, n) + c) % n; };
    u64 x = 2, y = 2, ys = 2, d = 1, q = 1;
    int r = 1;
    const int batch = 128;
    while (d == 1) {
      x = y;
      for (int i = 0; i < r; ++i) y = f(y);
      for (int k = 0; k < r && d == 1; k += batch) {
        ys = y;
        int steps = std::min(batch, r - k);
        for (int i = 0; i < steps; ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);  // q = 0 when the cycle closes
        }
        d = (u64)gcd((i64)q, (i64)n);
      }
      r *= 2;
    }
    if (d == n) {
      // The batch overshot (or the cycle closed): replay a step at a time.
      do {
        ys = f(ys);
        d = (u64)gcd((i64)(x > ys ? x - ys : ys - x), (i64)n);
      } while (d == 1);
    }
    if (d != n) return d;
    // True cycle without a factor: retry with the next polynomial increment.
  }
}

void factor_rec(u64 n, std::vector<i64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back((i64)n);
    return;
  }
  u64 d = brent_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

FactoredInt factorize(i64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
  FactoredInt f;
  f.sign = n < 0 ? -1 : 1;
  u64 m = n < 0 ? (u64)(-(n + 1)) + 1 : (u64)n;
  if (m > (u64)kFactorizeLimit) {
    throw std::invalid_argument("factorize: |n| exceeds 2^62: " + std::to_string(n));
  }

  static constexpr int kTrial[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (int p : kTrial) {
    if ((u64)p * (u64)p > m) break;
    if (m % (u64)p == 0) {
      int e = 0;
      while (m % (u64)p == 0) {
        m /= (u64)p;
        ++e;
      }
      f.factors.push_back({p, e});
    }
  }
  if (m > 1) {
    if (m <= 97ULL * 97ULL || is_prime(m)) {
      f.factors.push_back({(i64)m, 1});
    } else {
      std::vector<i64> ps;
      factor_rec(m, ps);
      std::sort(ps.begin(), ps.end());
      for (size_t i = 0; i < ps.size();) {
        size_t j = i;
        while (j < ps.size() && ps[j] == ps[i]) ++j;
        f.factors.push_back({ps[i], (int)(j - i)});
        i = j;
      }
    }
  }
  std::sort(f.factors.begin(), f.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
  return f;
}

std::vector<i64> divisors(const FactoredInt& f, bool sorted) {
  std::vector<i64> ds{1};
  for (const auto& [p, e] : f.factors) {
    size_t base = ds.size();
    i64 pe = 1;
    for (int k = 1; k <= e; ++k) {
      pe = mul_checked(pe, p);
      for (size_t i = 0; i < base; ++i) ds.push_back(mul_checked(ds[i], pe));
    }
  }
  if (sorted) std::sort(ds.begin(), ds.end());
  return ds;
}

ValuationSplit split_valuation(i64 n, i64 p) {
  if (n == 0) throw std::invalid_argument("split_valuation: n must be nonzero");
  if (p < 2) throw std::invalid_argument("split_valuation: p must be >= 2");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return {v, n};
}

SquarefreeSplit squarefree_decompose(const FactoredInt& f) {
  i64 b = 1, c = f.sign;
  for (const auto& [p, e] : f.factors) {
    for (int i = 0; i < e / 2; ++i) b = mul_checked(b, p);
    if (e % 2) c = mul_checked(c, p);
  }
  return {b, c};
}

SquarefreeSplit squarefree_decompose(i64 n) { return squarefree_decompose(factorize(n)); }

i64 squarefree_kernel(i64 n) {
  i64 c = squarefree_decompose(n).c;
  return c < 0 ? -c : c;
}

i64 tau(const FactoredInt& f) {
  i64 t = 1;
  for (const auto& pp : f.factors) t = mul_checked(t, pp.e + 1);
  return t;
}

int mobius(const FactoredInt& f) {
  for (const auto& pp : f.factors)
    if (pp.e > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

i64 phi(const FactoredInt& f) {
  i64 r = 1;
  for (const auto& [p, e] : f.factors) {
    r = mul_checked(r, p - 1);
    for (int i = 1; i < e; ++i) r = mul_checked(r, p);
  }
  return r;
}

i64 tau(i64 n) { return tau(factorize(n)); }
int mobius(i64 n) { return mobius(factorize(n)); }
i64 phi(i64 n) { return phi(factorize(n)); }

ClassicalValues classical_multiplicative(i64 n) {
  if (n < 1) throw std::invalid_argument("classical_multiplicative: n must be >= 1");
  FactoredInt f = factorize(n);
  return {tau(f), mobius(f), phi(f)};
}

}  // namespace hmlab::nt

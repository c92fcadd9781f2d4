#include <algorithm>
#include <vector>

#include "census_internal.hpp"

namespace hmlab::census {

namespace {

void require_even_q(i64 q, const char* who) {
  if (q < 2 || q % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": q must be even and >= 2, got " +
                                std::to_string(q));
  }
}

void require_positive(i64 v, const char* who) {
  if (v < 1) {
    throw std::invalid_argument(std::string(who) + ": arguments must be positive, got " +
                                std::to_string(v));
  }
}

nt::FactoredInt factor(i64 v, const nt::FactorSieve* sieve) {
  return sieve ? sieve->factorize(v) : nt::factorize(v);
}

void collect_distinct_primes(i64 v, const nt::FactorSieve* sieve, std::vector<i64>& out) {
  if (v == 1) return;
  for (const auto& pp : factor(v, sieve).factors) out.push_back(pp.p);
}

}  // namespace

int theta_prime_to_q(const Triple& t, i64 q, const nt::FactorSieve* sieve) {
  require_even_q(q, "theta_prime_to_q");
  for (i64 v : t) require_positive(v, "theta_prime_to_q");
  std::vector<i64> ps;
  for (i64 v : t) collect_distinct_primes(v, sieve, ps);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (i64 p : ps) {
    // q is even, so p = 2 never passes the filter and theta_padic only sees
    // odd primes here.
    if (q % p != 0 && conic::theta_padic(t, p) == 0) return 0;
  }
  return 1;
}

i64 theta_correlation(i64 a, i64 b, i64 c, i64 q, const nt::FactorSieve* sieve) {
  require_even_q(q, "theta_correlation");
  require_positive(a, "theta_correlation");
  require_positive(b, "theta_correlation");
  require_positive(c, "theta_correlation");
  const i64 ah = a / std::gcd(a, q);
  const i64 bh = b / std::gcd(b, q);
  const i64 ch = c / std::gcd(c, q);
  // The sum is empty unless the reduced parts are coprime to q. When they
  // are, they are odd (q is even), so every modulus below is a legal Jacobi
  // denominator.
  if (std::gcd(ah, q) != 1 || std::gcd(bh, q) != 1 || std::gcd(ch, q) != 1) return 0;
  if (ah == 1 && bh == 1 && ch == 1) return 0;  // both excluded corners coincide

  const i64 bc = mul_checked(b, c);
  const i64 ac = mul_checked(a, c);
  const i64 nab = -mul_checked(a, b);

  // The index set is the full divisor grid minus the corner u = (1,1,1) and
  // the corner of full complements u = (ah,bh,ch), so the sum factors.
  auto divisor_sum = [&](i64 num, i64 v) -> i64 {
    i64 s = 0;
    for (i64 u : nt::divisors(factor(v, sieve))) s += nt::jacobi(num, u);
    return s;
  };
  const i64 s0 = divisor_sum(bc, ah);
  const i64 s1 = divisor_sum(ac, bh);
  const i64 s2 = divisor_sum(nab, ch);
  const i64 corner = (i64)nt::jacobi(bc, ah) * nt::jacobi(ac, bh) * nt::jacobi(nab, ch);
  return s0 * s1 * s2 - 1 - corner;
}

PointwiseIdentity pointwise_solubility_identity(i64 a, i64 b, i64 c, i64 q,
                                                const nt::FactorSieve* sieve) {
  const char* who = "pointwise_solubility_identity";
  require_even_q(q, who);
  require_positive(a, who);
  require_positive(b, who);
  require_positive(c, who);
  if (std::gcd(a, b) != 1 || std::gcd(a, c) != 1 || std::gcd(b, c) != 1) {
    throw std::invalid_argument(std::string(who) + ": a, b, c must be pairwise coprime");
  }
  for (i64 v : {a, b, c}) {
    if (!detail::squarefree(v, sieve)) {
      throw std::invalid_argument(std::string(who) + ": a, b, c must be squarefree");
    }
  }
  // Odd radical of abc away from q. abc is squarefree, so stripping gcd(u, q)
  // removes exactly the primes shared with q.
  const i64 u = mul_checked(mul_checked(detail::odd_part(a), detail::odd_part(b)),
                            detail::odd_part(c));
  const i64 uh = u / std::gcd(u, q);
  if (uh == 1) {
    throw std::invalid_argument(
        std::string(who) +
        ": abc needs an odd prime factor away from q (the two excluded corners collide "
        "otherwise and the identity fails)");
  }

  PointwiseIdentity out{};
  out.lhs = theta_prime_to_q({a, b, c}, q, sieve);
  out.h = 1;
  for (const auto& pp : nt::factorize(q).factors) {
    out.h *= nt::hilbert_symbol_split(a, c, b, c, nt::Place::prime(pp.p));
  }
  out.theta = theta_correlation(a, b, c, q, sieve);
  out.tau_term = nt::tau(uh);
  out.holds = (i64)out.lhs * out.tau_term == 1 + out.h + out.theta;
  return out;
}

}  // namespace hmlab::census

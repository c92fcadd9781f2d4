// Truncated Euler products: beta_q, the census leading constant, and the
// unrestricted (q = 1) box constant. All products run over primes in
// increasing order with long double accumulation, and report the change over
// the last decade of primes as an empirical tail indicator.
#include <hmlab/constants.hpp>

#include <cmath>
#include <numeric>
#include <vector>

namespace hmlab::constants {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

// Odd primes up to pmax inclusive, via a plain byte sieve.
std::vector<i64> odd_primes_upto(i64 pmax) {
  if (pmax < 3) return {};
  if (pmax > 50'000'000) throw BudgetExceeded("prime cutoff too large");
  std::vector<unsigned char> composite((size_t)pmax + 1, 0);
  std::vector<i64> primes;
  for (i64 i = 3; i <= pmax; i += 2) {
    if (composite[(size_t)i]) continue;
    primes.push_back(i);
    for (i64 j = i * i; j <= pmax; j += 2 * i) composite[(size_t)j] = 1;
  }
  return primes;
}

void require_cfg(const EulerProductConfig& cfg) {
  if (cfg.pmax < 3) throw std::invalid_argument("EulerProductConfig: pmax must be >= 3");
}

// Runs `log_factor` over odd primes <= pmax, returning exp of the sum together
// with the last-decade delta |P(pmax) - P(pmax/10)| (0 when pmax/10 < 3).
template <typename F>
EulerValue euler_over_odd_primes(i64 pmax, long double log_prefactor, F log_factor) {
  const i64 decade = pmax / 10;
  long double log_sum = 0.0L;
  long double log_at_decade = 0.0L;
  bool have_decade = decade < 3;  // empty truncation: delta vs prefactor alone
  if (have_decade) log_at_decade = 0.0L;
  for (i64 p : odd_primes_upto(pmax)) {
    if (!have_decade && p > decade) {
      log_at_decade = log_sum;
      have_decade = true;
    }
    log_sum += log_factor(p);
  }
  if (!have_decade) log_at_decade = log_sum;
  EulerValue out;
  out.pmax = pmax;
  out.value = expl(log_prefactor + log_sum);
  out.last_decade_delta = fabsl(out.value - expl(log_prefactor + log_at_decade));
  return out;
}

}  // namespace

EulerValue beta_factor(const std::array<i64, 3>& b, const std::array<i64, 3>& m,
                       i64 q, const EulerProductConfig& cfg) {
  require_cfg(cfg);
  if (q <= 0) throw std::invalid_argument("beta_factor: q must be positive");
  for (i64 v : b) {
    if (v <= 0) throw std::invalid_argument("beta_factor: b must be positive");
  }
  for (i64 v : m) {
    if (v <= 0) throw std::invalid_argument("beta_factor: m must be positive");
  }
  const i64 m012_gcds[3] = {std::gcd(b[0], b[1]), std::gcd(b[0], b[2]), std::gcd(b[1], b[2])};
  auto log_factor = [&](i64 p) -> long double {
    // #pairs (i,j), i < j, with p !| m012 * gcd(b_i, b_j) * q.
    bool p_divides_m012 = (m[0] % p == 0) || (m[1] % p == 0) || (m[2] % p == 0);
    int pairs = 0;
    if (!p_divides_m012 && q % p != 0) {
      // pair order (0,1), (0,2), (1,2)
      for (int k = 0; k < 3; ++k) {
        if (m012_gcds[k] % p != 0) ++pairs;
      }
    }
    long double x = (long double)p;
    return 1.5L * logl(1.0L - 1.0L / x) + logl(1.0L + pairs / (2.0L * x));
  };
  return euler_over_odd_primes(cfg.pmax, 0.0L, log_factor);
}

EulerValue predicted_census_constant(const Triple& n, i64 q,
                                     const EulerProductConfig& cfg) {
  require_cfg(cfg);
  // Hypotheses: q squarefull with 8 | q, class-determined local behavior.
  conic::require_squarefull_q(q);
  for (i64 v : n) {
    if (v < 0 || v >= q) {
      throw std::invalid_argument("predicted_census_constant: residues must lie in [0, q)");
    }
  }
  conic::Applicability app = conic::residue_class_applicability(n, q);
  if (!app.applicable) {
    throw std::domain_error("predicted_census_constant: class fails applicability: " +
                            app.reason);
  }

  // (2 / pi^{3/2}) * phi(q)^{-3} * prod_p (1-1/p)^{3/2} delta_p(n).
  // Factors at p | q are (1-1/p)^{3/2} theta_p(n); all other p <= pmax use the
  // closed rational form. theta_2 factor handled with the odd p | q ones.
  long double log_prefactor = logl(2.0L) - 1.5L * logl(kPi) - 3.0L * logl((long double)nt::phi(q));

  for (const auto& pp : nt::factorize(q).factors) {
    if (conic::theta_padic(n, pp.p) == 0) {
      return EulerValue{0.0L, 0.0L, cfg.pmax};
    }
    long double x = (long double)pp.p;
    log_prefactor += 1.5L * logl(1.0L - 1.0L / x);  // theta factor is 1
  }
  // The prime 2 contributes only through p | q (8 | q always holds here).

  auto log_factor = [&](i64 p) -> long double {
    if (q % p == 0) return 0.0L;  // already in the prefactor
    long double x = (long double)p;
    // (1-1/p)^{3/2} * (p^2+p+1)(2p^2+p+2) / (2 (p-1)^2 (p+1)^2)
    long double num = ((x * x + x + 1) * (2 * x * x + x + 2));
    long double den = 2 * (x - 1) * (x - 1) * (x + 1) * (x + 1);
    return 1.5L * logl(1.0L - 1.0L / x) + logl(num / den);
  };
  return euler_over_odd_primes(cfg.pmax, log_prefactor, log_factor);
}

EulerValue universal_box_constant(const EulerProductConfig& cfg) {
  require_cfg(cfg);
  // (2 / pi^{3/2}) * prod_p (1-1/p)^{-3/2} (1-1/p^3) c_p with the identity
  // family's local measures: c_2 = 7/12 (measured by refinement and checked
  // by simulation), odd c_p = (1 + 1/(2p) + 1/p^2) / (1 + 1/p)^2,
  // equivalently per odd prime (1-1/p)^{3/2} times the closed delta_p form.
  long double log_prefactor = logl(2.0L) - 1.5L * logl(kPi);
  {
    long double c2 = 7.0L / 12.0L;
    log_prefactor += -1.5L * logl(0.5L) + logl(1.0L - 0.125L) + logl(c2);
  }
  auto log_factor = [](i64 p) -> long double {
    long double x = (long double)p;
    long double cp = (1.0L + 1.0L / (2 * x) + 1.0L / (x * x)) / ((1.0L + 1.0L / x) * (1.0L + 1.0L / x));
    return -1.5L * logl(1.0L - 1.0L / x) + logl(1.0L - 1.0L / (x * x * x)) + logl(cp);
  };
  return euler_over_odd_primes(cfg.pmax, log_prefactor, log_factor);
}

}  // namespace hmlab::constants

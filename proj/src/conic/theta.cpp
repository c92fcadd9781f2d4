#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "hmlab/conic.hpp"

namespace hmlab::conic {

void require_nonzero(const Triple& t, const char* who) {
  if (t[0] == 0 || t[1] == 0 || t[2] == 0) {
    throw std::invalid_argument(std::string(who) + ": coefficients must be nonzero");
  }
}

int theta_real(const Triple& t) {
  require_nonzero(t, "theta_real");
  bool all_pos = t[0] > 0 && t[1] > 0 && t[2] < 0;
  bool all_neg = t[0] < 0 && t[1] < 0 && t[2] > 0;
  return (all_pos || all_neg) ? 0 : 1;
}

int theta_padic(const Triple& t, i64 p) {
  require_nonzero(t, "theta_padic");
  if (p == 2) {
    return nt::hilbert_symbol_split(t[0], t[2], t[1], t[2], nt::Place::prime(2)) == 1 ? 1 : 0;
  }
  if (p < 3 || p % 2 == 0) {
    throw std::invalid_argument("theta_padic: p must be prime, got " + std::to_string(p));
  }
  // An odd prime away from the coefficients is always soluble (two of the
  // three Hilbert entries are units and the valuations are even). This keeps
  // the full primality check off the common path.
  if (t[0] % p != 0 && t[1] % p != 0 && t[2] % p != 0) return 1;
  if (!nt::is_prime((u64)p)) {
    throw std::invalid_argument("theta_padic: p must be prime, got " + std::to_string(p));
  }
  return nt::hilbert_symbol_split(t[0], t[2], t[1], t[2], nt::Place::prime(p)) == 1 ? 1 : 0;
}

int theta_global(const Triple& t, const nt::FactorSieve* sieve) {
  require_nonzero(t, "theta_global");
  if (theta_real(t) == 0) return 0;
  // Solubility is invariant under scaling the triple, so work primitively.
  i64 g = nt::gcd(nt::gcd(t[0], t[1]), t[2]);
  Triple s{t[0] / g, t[1] / g, t[2] / g};
  std::set<i64> ps{2};
  for (i64 v : s) {
    nt::FactoredInt f = sieve ? sieve->factorize(v) : nt::factorize(v);
    for (const auto& pp : f.factors) ps.insert(pp.p);
  }
  for (i64 p : ps) {
    if (theta_padic(s, p) == 0) return 0;
  }
  return 1;
}

void require_squarefull_q(i64 q) {
  if (q < 8 || q % 8 != 0) {
    throw std::invalid_argument("modulus must be a positive multiple of 8");
  }
  for (auto [p, e] : nt::factorize(q).factors) {
    if (e < 2) {
      throw std::invalid_argument("modulus must be squarefull; prime " + std::to_string(p) +
                                  " divides it exactly once");
    }
  }
}

Applicability residue_class_applicability(const Triple& n, i64 q) {
  require_squarefull_q(q);
  constexpr int kInf = 1 << 20;  // stands in for "class is 0 mod p^k"
  for (auto [p, k] : nt::factorize(q).factors) {
    i64 pk = 1;
    for (int i = 0; i < k; ++i) pk = mul_checked(pk, p);
    int vn[3];
    for (int i = 0; i < 3; ++i) {
      i64 rep = nt::mod_floor(n[i], pk);
      vn[i] = rep == 0 ? kInf : nt::valuation(rep, p);
    }
    int bound = p == 2 ? k - 2 : k;
    int worst = std::max(vn[0] + vn[2], vn[1] + vn[2]);
    if (worst >= bound) {
      return {false, "theta_" + std::to_string(p) + " is not constant on the class: max(v(n0 n2), v(n1 n2)) = " +
                         (worst >= kInf ? std::string("inf") : std::to_string(worst)) +
                         " but the bound is " + std::to_string(bound)};
    }
  }
  return {true, ""};
}

}  // namespace hmlab::conic

#include <string>

#include "census_internal.hpp"

namespace hmlab::census {

namespace {

void validate_index(const InnerSumIndex& idx, i64 q) {
  const char* who = "evaluate_inner_sums";
  if (q < 2 || q % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": q must be even and >= 2");
  }
  for (i64 v : idx.b) {
    if (v < 1) throw std::invalid_argument(std::string(who) + ": b_i must be positive");
  }
  for (i64 v : idx.m) {
    if (v < 1) throw std::invalid_argument(std::string(who) + ": m_ij must be positive");
  }
  for (i64 v : idx.X) {
    if (v < 0) throw std::invalid_argument(std::string(who) + ": X_i must be >= 0");
  }
  if (detail::gcd3(idx.b[0], idx.b[1], idx.b[2]) != 1) {
    throw std::invalid_argument(std::string(who) + ": gcd(b0, b1, b2) must be 1");
  }
  const i64 m01 = idx.m[0], m02 = idx.m[1], m12 = idx.m[2];
  if (std::gcd(m01, idx.b[2]) != 1 || std::gcd(m02, idx.b[1]) != 1 ||
      std::gcd(m12, idx.b[0]) != 1) {
    throw std::invalid_argument(std::string(who) + ": gcd(m_ij, b_k) must be 1");
  }
  const i64 m012 = mul_checked(mul_checked(m01, m02), m12);
  if (!detail::squarefree(m012, nullptr)) {
    throw std::invalid_argument(std::string(who) + ": m01 m02 m12 must be squarefree");
  }
  // The enumeration visits one class member per coordinate step of q.
  const long double grid = ((long double)idx.X[0] / (long double)q + 1.0L) *
                           ((long double)idx.X[1] / (long double)q + 1.0L) *
                           ((long double)idx.X[2] / (long double)q + 1.0L);
  if (grid > 1.0e8L) {
    throw BudgetExceeded(std::string(who) + ": lattice larger than 10^8 points");
  }
}

}  // namespace

InnerSums evaluate_inner_sums(const InnerSumIndex& idx, i64 q, const nt::FactorSieve* sieve) {
  validate_index(idx, q);
  const i64 m01 = idx.m[0], m02 = idx.m[1], m12 = idx.m[2];
  const i64 m012 = m01 * m02 * m12;
  // gcd(l_i, b_j, b_k) = 1 constrains l_i modulo the gcd of the other two b's.
  const std::array<i64, 3> bb = {std::gcd(idx.b[1], idx.b[2]), std::gcd(idx.b[0], idx.b[2]),
                                 std::gcd(idx.b[0], idx.b[1])};
  std::array<i64, 3> start{};
  for (int i = 0; i < 3; ++i) {
    i64 rep = nt::mod_floor(idx.r[i], q);
    start[i] = rep == 0 ? q : rep;
  }

  InnerSums out{0, Rat(0), Rat(0)};
  for (i64 l0 = start[0]; l0 <= idx.X[0]; l0 += q) {
    if (std::gcd(l0, bb[0]) != 1) continue;
    if (std::gcd(l0, m012) != 1) continue;
    if (!detail::squarefree(l0, sieve)) continue;
    for (i64 l1 = start[1]; l1 <= idx.X[1]; l1 += q) {
      if (std::gcd(l1, bb[1]) != 1) continue;
      if (std::gcd(l1, m012) != 1) continue;
      if (std::gcd(l1, l0) != 1) continue;
      if (!detail::squarefree(l1, sieve)) continue;
      for (i64 l2 = start[2]; l2 <= idx.X[2]; l2 += q) {
        if (std::gcd(l2, bb[2]) != 1) continue;
        if (std::gcd(l2, m012) != 1) continue;
        if (std::gcd(l2, l0) != 1 || std::gcd(l2, l1) != 1) continue;
        if (!detail::squarefree(l2, sieve)) continue;

        const Triple model = {mul_checked(m12, l0), mul_checked(m02, l1), mul_checked(m01, l2)};
        out.N += theta_prime_to_q(model, q, sieve);
        const i64 lp = detail::odd_part(l0 * l1 * l2);
        const Rat weight(nt::tau(std::gcd(lp, q)), nt::tau(lp));
        out.M = out.M + weight;
        out.E = out.E + weight * Rat(theta_correlation(model[0], model[1], model[2], q, sieve));
      }
    }
  }
  return out;
}

}  // namespace hmlab::census

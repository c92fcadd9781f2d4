#include <optional>
#include <utility>
#include <vector>

#include "census_internal.hpp"

namespace hmlab::census {

namespace {

// x with a x = 1 (mod m), for gcd(a, m) = 1, m >= 1.
i64 inverse_mod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 r0 = m, r1 = nt::mod_floor(a, m);
  i64 x0 = 0, x1 = 1;
  while (r1 != 0) {
    const i64 qd = r0 / r1;
    r0 -= qd * r1;
    std::swap(r0, r1);
    x0 -= qd * x1;
    std::swap(x0, x1);
  }
  return nt::mod_floor(x0, m);
}

// All r in [0, q) with a r = n (mod q); empty when gcd(a, q) does not divide n.
std::vector<i64> congruence_solutions(i64 a, i64 n, i64 q) {
  a = nt::mod_floor(a, q);
  n = nt::mod_floor(n, q);
  const i64 g = std::gcd(a, q);  // gcd(0, q) = q
  std::vector<i64> out;
  if (n % g != 0) return out;
  const i64 q2 = q / g;
  const i64 base =
      q2 == 1 ? 0 : nt::mod_floor128((hmlab::i128)inverse_mod(a / g, q2) * (n / g), q2);
  out.reserve((size_t)g);
  for (i64 t = 0; t < g; ++t) out.push_back(base + t * q2);
  return out;
}

}  // namespace

i64 decomposition_census(const CensusSpec& spec, const nt::FactorSieve* sieve) {
  detail::validate_spec(spec, "decomposition_census");
  if (!spec.theorem_mode) {
    throw std::invalid_argument(
        "decomposition_census: theorem_mode must be set (squarefull q, deterministic class)");
  }
  const i64 B = spec.B;
  const i64 q = spec.q;
  Triple n;
  for (int i = 0; i < 3; ++i) n[i] = nt::mod_floor(spec.n[i], q);
  // Applicability (checked by validate_spec) makes theta_p constant on the
  // class for p | q, so the representative decides the local prefactor.
  for (const auto& pp : nt::factorize(q).factors) {
    if (conic::theta_padic(n, pp.p) == 0) return 0;
  }

  std::optional<nt::FactorSieve> own;
  if (sieve == nullptr || sieve->limit() < (u32)B) {
    own.emplace((u32)B + 1);
    sieve = &*own;
  }

  i64 total = 0;
  for (i64 b0 = 1; b0 * b0 <= B; ++b0) {
    const i64 s0 = b0 * b0;
    for (i64 b1 = 1; b1 * b1 <= B; ++b1) {
      const i64 s1 = b1 * b1;
      for (i64 b2 = 1; b2 * b2 <= B; ++b2) {
        const i64 s2 = b2 * b2;
        if (detail::gcd3(b0, b1, b2) != 1) continue;
        for (i64 m01 = 1; s0 * m01 <= B && s1 * m01 <= B; ++m01) {
          if (std::gcd(m01, b2) != 1) continue;
          if (!detail::squarefree(m01, sieve)) continue;
          for (i64 m02 = 1; s0 * m01 * m02 <= B && s2 * m02 <= B; ++m02) {
            if (std::gcd(m02, b1) != 1) continue;
            if (std::gcd(m02, m01) != 1) continue;
            if (!detail::squarefree(m02, sieve)) continue;
            for (i64 m12 = 1; s1 * m01 * m12 <= B && s2 * m02 * m12 <= B; ++m12) {
              if (std::gcd(m12, b0) != 1) continue;
              if (std::gcd(m12, m01) != 1 || std::gcd(m12, m02) != 1) continue;
              if (!detail::squarefree(m12, sieve)) continue;

              // Divisors of the three coordinates: t_i = b_i^2 m_ij m_ik l_i.
              const std::array<i64, 3> a = {s0 * m01 * m02, s1 * m01 * m12, s2 * m02 * m12};
              const std::array<i64, 3> X = {B / a[0], B / a[1], B / a[2]};
              const auto r0s = congruence_solutions(a[0], n[0], q);
              if (r0s.empty()) continue;
              const auto r1s = congruence_solutions(a[1], n[1], q);
              if (r1s.empty()) continue;
              const auto r2s = congruence_solutions(a[2], n[2], q);
              if (r2s.empty()) continue;

              InnerSumIndex idx{{b0, b1, b2}, {m01, m02, m12}, {0, 0, 0}, X};
              for (i64 r0 : r0s) {
                for (i64 r1 : r1s) {
                  for (i64 r2 : r2s) {
                    idx.r = {r0, r1, r2};
                    total += evaluate_inner_sums(idx, q, sieve).N;
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  return total;
}

}  // namespace hmlab::census

#pragma once
// Helpers shared by the census translation units: spec validation, the
// progression-lattice geometry, and small arithmetic utilities.

#include <numeric>
#include <stdexcept>
#include <string>

#include "hmlab/census.hpp"

namespace hmlab::census::detail {

inline i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }

inline void validate_spec(const CensusSpec& spec, const char* who) {
  const std::string w(who);
  if (spec.B < 1) throw std::invalid_argument(w + ": B must be >= 1");
  if (spec.q < 1) throw std::invalid_argument(w + ": q must be >= 1");
  if (spec.q > 1) {
    i64 g = spec.q;
    for (i64 v : spec.n) g = std::gcd(g, nt::mod_floor(v, spec.q));
    if (g != 1) {
      throw std::invalid_argument(w + ": class is not primitive, gcd(n0, n1, n2, q) = " +
                                  std::to_string(g));
    }
  }
  if (spec.theorem_mode) {
    conic::require_squarefull_q(spec.q);
    auto app = conic::residue_class_applicability(spec.n, spec.q);
    if (!app.applicable) throw std::invalid_argument(w + ": " + app.reason);
  }
  if (spec.shard) {
    auto [idx, tot] = *spec.shard;
    if (tot < 1 || idx < 0 || idx >= tot) {
      throw std::invalid_argument(w + ": shard (" + std::to_string(idx) + ", " +
                                  std::to_string(tot) + ") out of range");
    }
  }
}

// Per-coordinate progression geometry: smallest value of the class in [1, B]
// and the number of class members in [1, B].
struct Lattice {
  std::array<i64, 3> start;
  std::array<i64, 3> count;
};

inline Lattice lattice_of(const CensusSpec& spec) {
  Lattice lat{};
  for (int i = 0; i < 3; ++i) {
    i64 rep = nt::mod_floor(spec.n[i], spec.q);
    i64 s = rep == 0 ? spec.q : rep;
    lat.start[i] = s;
    lat.count[i] = s > spec.B ? 0 : (spec.B - s) / spec.q + 1;
  }
  return lat;
}

inline bool squarefree(i64 v, const nt::FactorSieve* sieve) {
  if (v == 1) return true;
  if (sieve && v <= (i64)sieve->limit()) return sieve->mobius((u32)v) != 0;
  for (const auto& pp : (sieve ? sieve->factorize(v) : nt::factorize(v)).factors) {
    if (pp.e > 1) return false;
  }
  return true;
}

inline i64 odd_part(i64 v) {
  while (v % 2 == 0) v /= 2;
  return v;
}

}  // namespace hmlab::census::detail

#include <algorithm>
#include <vector>

namespace hmlab::census::detail {

// Solubility test for a positive primitive triple with every coordinate below
// the sieve limit: the real place is trivially soluble, so the test walks the
// odd primes of t0 t1 t2 (plus 2) through theta_padic. `ps` is caller-owned
// scratch so hot loops do not allocate.
inline bool soluble_positive(const conic::Triple& t, const nt::FactorSieve& sieve,
                             std::vector<i64>& ps) {
  ps.clear();
  ps.push_back(2);
  for (i64 v : t) {
    if (v > 1) sieve.distinct_primes((u32)v, ps);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (i64 p : ps) {
    if (conic::theta_padic(t, p) == 0) return false;
  }
  return true;
}

}  // namespace hmlab::census::detail

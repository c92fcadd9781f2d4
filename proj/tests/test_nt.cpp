#include <set>

#include "doctest.h"
#include "hmlab/nt.hpp"
#include "hmlab/rng.hpp"
#include "hmlab/sieve.hpp"
#include "oracles/oracles.hpp"

using namespace hmlab;
using namespace hmlab::nt;

TEST_CASE("factorize: pinned values") {
  FactoredInt f = factorize(-12);
  CHECK(f.sign == -1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{2, 2});
  CHECK(f.factors[1] == PrimePower{3, 1});
  CHECK(f.value() == -12);

  CHECK(factorize(1).factors.empty());
  CHECK(factorize(-1).sign == -1);
  CHECK(factorize(2147483647).factors.size() == 1);  // Mersenne prime 2^31-1
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize: agrees with trial division on a random sample") {
  rng::CounterStream rs{20260815};
  for (int i = 0; i < 400; ++i) {
    i64 n = (i64)rng::bounded(rs.at((u64)i), 4000000000ULL) + 2;
    if (i % 3 == 0) n = -n;
    FactoredInt f = factorize(n);
    auto ref = oracle::slow_factorize(n);
    REQUIRE(f.factors.size() == ref.size());
    for (size_t j = 0; j < ref.size(); ++j) {
      CHECK(f.factors[j].p == ref[j].first);
      CHECK(f.factors[j].e == ref[j].second);
    }
    CHECK(f.value() == n);
  }
}

TEST_CASE("factorize: semiprimes past the trial-division floor") {
  // Forces the rho path: products of two primes near 10^6 and 10^9.
  i64 cases[] = {999983LL * 999979LL, 1000003LL * 999983LL, 1000000007LL * 999999937LL};
  for (i64 n : cases) {
    FactoredInt f = factorize(n);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.value() == n);
    CHECK(is_prime((u64)f.factors[0].p));
    CHECK(is_prime((u64)f.factors[1].p));
  }
}

TEST_CASE("is_prime: matches trial division up to 20000 and on edge cases") {
  for (i64 n = 0; n <= 20000; ++n) {
    bool ref = n >= 2;
    for (i64 d = 2; d * d <= n && ref; ++d)
      if (n % d == 0) ref = false;
    CHECK(is_prime((u64)n) == ref);
  }
  CHECK(is_prime(2147483647ULL));
  CHECK(!is_prime(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
}

TEST_CASE("split_valuation: pinned values and sign handling") {
  CHECK(split_valuation(40, 2) == ValuationSplit{3, 5});
  CHECK(split_valuation(-96, 2) == ValuationSplit{5, -3});
  CHECK(split_valuation(7, 5) == ValuationSplit{0, 7});
  CHECK_THROWS_AS(split_valuation(0, 2), std::invalid_argument);
}

TEST_CASE("squarefree_decompose: pinned values") {
  CHECK(squarefree_decompose(45) == SquarefreeSplit{3, 5});
  CHECK(squarefree_decompose(72) == SquarefreeSplit{6, 2});
  CHECK(squarefree_decompose(-45) == SquarefreeSplit{3, -5});
  CHECK(squarefree_decompose(1) == SquarefreeSplit{1, 1});
  CHECK(squarefree_decompose(-1) == SquarefreeSplit{1, -1});
  // b^2 * c recomposes and c is squarefree, across a range.
  for (i64 n = 1; n <= 3000; ++n) {
    auto [b, c] = squarefree_decompose(n);
    CHECK(b * b * c == n);
    CHECK(oracle::slow_mobius(c < 0 ? -c : c) != 0);
  }
}

TEST_CASE("classical multiplicative functions: pinned values and oracle sweep") {
  CHECK(classical_multiplicative(12) == ClassicalValues{6, 0, 4});
  CHECK(classical_multiplicative(30) == ClassicalValues{8, -1, 8});
  CHECK(classical_multiplicative(1) == ClassicalValues{1, 1, 1});
  for (i64 n = 1; n <= 2000; ++n) {
    auto v = classical_multiplicative(n);
    CHECK(v.tau == oracle::slow_tau(n));
    CHECK(v.mobius == oracle::slow_mobius(n));
    CHECK(v.phi == oracle::slow_phi(n));
  }
}

TEST_CASE("divisors: complete and consistent with tau") {
  for (i64 n = 1; n <= 500; ++n) {
    auto ds = divisors(factorize(n), true);
    CHECK((i64)ds.size() == oracle::slow_tau(n));
    for (i64 d : ds) CHECK(n % d == 0);
    CHECK(std::set<i64>(ds.begin(), ds.end()).size() == ds.size());
  }
}

TEST_CASE("jacobi: pinned values, error cases, oracle sweep") {
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(1001, 9907) == -1);
  CHECK(jacobi(19, 45) == 1);
  CHECK(jacobi(8, 21) == -1);
  CHECK(jacobi(5, 21) == 1);
  CHECK(jacobi(0, 3) == 0);
  CHECK(jacobi(1, 1) == 1);
  CHECK_THROWS_AS(jacobi(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, -5), std::invalid_argument);
  CHECK_THROWS_AS(jacobi(3, 0), std::invalid_argument);

  for (i64 n = 1; n <= 301; n += 2) {
    for (i64 a = -2 * n; a <= 2 * n; ++a) {
      CHECK(jacobi(a, n) == oracle::slow_jacobi(a, n));
    }
  }
}

TEST_CASE("jacobi128: reduces wide numerators correctly") {
  i128 big = (i128)123456789012345678LL * 987654321LL;
  i64 n = 1000003;
  CHECK(jacobi128(big, n) == jacobi(mod_floor128(big, n), n));
  CHECK(jacobi128(-big, n) == jacobi(mod_floor128(-big, n), n));
}

TEST_CASE("sqrt_mod_prime: roots verified, non-residues rejected") {
  for (i64 p : {3, 5, 7, 11, 13, 17, 97, 193, 577, 7681, 65537, 999983}) {
    int found = 0;
    for (u64 a = 0; a < 60; ++a) {
      u64 ar = a % (u64)p;
      auto r = sqrt_mod_prime(ar, (u64)p);
      if (r) {
        ++found;
        CHECK(mulmod(*r, *r, (u64)p) == ar);
      } else {
        CHECK(powmod(ar, ((u64)p - 1) / 2, (u64)p) == (u64)p - 1);
      }
    }
    CHECK(found > 0);
  }
}

TEST_CASE("hilbert_symbol: pinned values") {
  CHECK(hilbert_symbol(-1, -1, Place::real()) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::prime(2)) == -1);
  CHECK(hilbert_symbol(3, 3, Place::prime(3)) == -1);
  CHECK(hilbert_symbol(1, 1, Place::real()) == 1);
  CHECK(hilbert_symbol(-1, 2, Place::prime(2)) == 1);
  CHECK(hilbert_symbol(2, 2, Place::prime(2)) == 1);   // (2,2) ~ (2,-1)*(2,-(-1)) = 1
  CHECK(hilbert_symbol(5, -1, Place::prime(5)) == 1);  // -1 is a square mod 5
  CHECK(hilbert_symbol(3, -1, Place::prime(3)) == -1); // -1 is not a square mod 3
  CHECK_THROWS_AS(hilbert_symbol(0, 1, Place::real()), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_symbol(1, 1, Place::prime(6)), std::invalid_argument);
}

TEST_CASE("hilbert_symbol: agrees with p-adic solubility search on small inputs") {
  // (a,b)_p = 1 iff a x^2 + b y^2 = z^2 is p-adically soluble; check against
  // the enumeration oracle over a grid of small a, b and relevant primes.
  for (i64 a = -9; a <= 9; ++a) {
    for (i64 b = -9; b <= 9; ++b) {
      if (a == 0 || b == 0) continue;
      for (i64 p : {2, 3, 5, 7}) {
        auto ref = oracle::local_soluble_search({a, b, 1}, p);
        REQUIRE(ref.has_value());
        int sym = hilbert_symbol(a, b, Place::prime(p));
        CHECK_MESSAGE((sym == 1) == *ref, "a=" << a << " b=" << b << " p=" << p);
      }
      bool rref = oracle::real_soluble_by_signs({a, b, 1});
      CHECK((hilbert_symbol(a, b, Place::real()) == 1) == rref);
    }
  }
}

TEST_CASE("hilbert_symbol_split: matches the direct symbol on random factorizations") {
  rng::CounterStream rs{777};
  for (int i = 0; i < 4000; ++i) {
    i64 a0 = (i64)rng::bounded(rs.at(4 * (u64)i + 0), 2000) - 1000;
    i64 a1 = (i64)rng::bounded(rs.at(4 * (u64)i + 1), 2000) - 1000;
    i64 b0 = (i64)rng::bounded(rs.at(4 * (u64)i + 2), 2000) - 1000;
    i64 b1 = (i64)rng::bounded(rs.at(4 * (u64)i + 3), 2000) - 1000;
    if (a0 == 0 || a1 == 0 || b0 == 0 || b1 == 0) continue;
    for (i64 p : {2, 3, 5, 13}) {
      Place v = Place::prime(p);
      CHECK(hilbert_symbol_split(a0, a1, b0, b1, v) == hilbert_symbol(a0 * a1, b0 * b1, v));
    }
    CHECK(hilbert_symbol_split(a0, a1, b0, b1, Place::real()) ==
          hilbert_symbol(a0 * a1, b0 * b1, Place::real()));
  }
}

TEST_CASE("hilbert_symbol: product formula over all places on a random sample") {
  rng::CounterStream rs{424242};
  for (int i = 0; i < 500; ++i) {
    i64 a = (i64)rng::bounded(rs.at(2 * (u64)i), 20000) - 10000;
    i64 b = (i64)rng::bounded(rs.at(2 * (u64)i + 1), 20000) - 10000;
    if (a == 0 || b == 0) continue;
    int prod = hilbert_symbol(a, b, Place::real());
    std::set<i64> ps{2};
    for (auto [p, e] : factorize(a).factors) ps.insert(p);
    for (auto [p, e] : factorize(b).factors) ps.insert(p);
    for (i64 p : ps) prod *= hilbert_symbol(a, b, Place::prime(p));
    CHECK(prod == 1);
  }
}

TEST_CASE("FactorSieve: matches factorize across its range") {
  FactorSieve sieve(100000);
  rng::CounterStream rs{11};
  for (int i = 0; i < 500; ++i) {
    i64 n = (i64)rng::bounded(rs.at((u64)i), 100000) + 1;
    FactoredInt a = sieve.factorize(n);
    FactoredInt b = factorize(n);
    CHECK(a.sign == b.sign);
    CHECK(a.factors == b.factors);
    if (n <= 100000) CHECK(sieve.mobius((u32)n) == mobius(b));
  }
  // Fallback above the table limit.
  CHECK(sieve.factorize(1000003LL * 7).value() == 7000021);
  // Prime list sanity.
  CHECK(sieve.primes().front() == 2);
  CHECK(sieve.primes()[24] == 97);
}

TEST_CASE("primes_up_to: counts and membership") {
  auto ps = primes_up_to(10000);
  CHECK(ps.size() == 1229);
  CHECK(ps.back() == 9973);
}

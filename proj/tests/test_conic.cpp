// Conic module tests: local and global solubility, the pairwise coprime
// squarefree reduction, the complete bounded point search, and residue-class
// determinism. Solubility values are checked against independent oracles
// (residue enumeration with Hensel certificates, box search) rather than
// against the formulas they are computed from.

#include "doctest.h"

#include <algorithm>
#include <set>

#include "hmlab/conic.hpp"
#include "hmlab/nt.hpp"
#include "hmlab/rng.hpp"
#include "oracles/oracles.hpp"

using namespace hmlab;
using conic::Triple;

namespace {

// Deterministic nonzero coefficient in [-bound, bound].
i64 draw_nonzero(rng::CounterStream& rs, u64& j, i64 bound) {
  for (;;) {
    u64 raw = rs.at(j++);
    i64 v = (i64)rng::bounded(raw, (u64)(2 * bound + 1)) - bound;
    if (v != 0) return v;
  }
}

bool on_conic(const Triple& t, const Triple& pt) {
  i128 lhs = (i128)t[0] * pt[0] * pt[0] + (i128)t[1] * pt[1] * pt[1];
  i128 rhs = (i128)t[2] * pt[2] * pt[2];
  return lhs == rhs && !(pt[0] == 0 && pt[1] == 0 && pt[2] == 0);
}

i64 gcd3(const Triple& pt) {
  return nt::gcd(nt::gcd(pt[0], pt[1]), pt[2]);
}

}  // namespace

TEST_CASE("theta_real: sign analysis") {
  CHECK(conic::theta_real({1, 1, 1}) == 1);
  CHECK(conic::theta_real({-3, -5, 7}) == 0);   // t0, t1, -t2 all negative
  CHECK(conic::theta_real({3, 5, -7}) == 0);    // t0, t1, -t2 all positive
  CHECK(conic::theta_real({-1, -1, -1}) == 1);  // mixed after negation
  CHECK(conic::theta_real({-1, 1, 1}) == 1);
  CHECK(conic::theta_real({1, -1, -1}) == 1);
  CHECK_THROWS_AS(conic::theta_real({0, 1, 1}), std::invalid_argument);

  // Against the oracle on a full small box.
  for (i64 a = -3; a <= 3; ++a)
    for (i64 b = -3; b <= 3; ++b)
      for (i64 c = -3; c <= 3; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        CHECK(conic::theta_real({a, b, c}) == (oracle::real_soluble_by_signs({a, b, c}) ? 1 : 0));
      }
}

TEST_CASE("theta_padic: pinned values and validation") {
  // x^2 + y^2 = 3 z^2 fails at 2 and 3, passes elsewhere.
  CHECK(conic::theta_padic({1, 1, 3}, 3) == 0);
  CHECK(conic::theta_padic({1, 1, 3}, 2) == 0);
  CHECK(conic::theta_padic({1, 1, 3}, 5) == 1);
  CHECK(conic::theta_padic({1, 1, 3}, 7) == 1);
  // x^2 + y^2 = z^2 is soluble everywhere.
  for (i64 p : {2, 3, 5, 7, 11, 13})
    CHECK(conic::theta_padic({1, 1, 1}, p) == 1);
  // Odd prime away from the coefficients short-circuits to 1.
  CHECK(conic::theta_padic({1, 1, 2}, 5) == 1);
  CHECK(conic::theta_padic({6, 10, 15}, 7) == 1);

  CHECK_THROWS_AS(conic::theta_padic({1, 1, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(conic::theta_padic({1, 1, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(conic::theta_padic({9, 3, 27}, 9), std::invalid_argument);
  CHECK_THROWS_AS(conic::theta_padic({0, 1, 1}, 3), std::invalid_argument);
}

TEST_CASE("theta_padic: agrees with residue-enumeration oracle") {
  const std::vector<i64> primes = {2, 3, 5, 7, 11, 13};

  // Exhaustive tiny box.
  for (i64 a = -4; a <= 4; ++a)
    for (i64 b = -4; b <= 4; ++b)
      for (i64 c = -4; c <= 4; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        Triple t{a, b, c};
        for (i64 p : {2, 3, 5}) {
          auto want = oracle::local_soluble_search(t, p);
          if (!want) continue;  // oracle budget; inputs mostly avoid this
          CHECK_MESSAGE(conic::theta_padic(t, p) == (*want ? 1 : 0),
                        "t=(" << a << "," << b << "," << c << ") p=" << p);
        }
      }

  // Random triples, larger coefficients.
  rng::CounterStream rs(0xC051C57E57ULL);
  u64 j = 0;
  int compared = 0;
  for (int iter = 0; iter < 400; ++iter) {
    Triple t{draw_nonzero(rs, j, 30), draw_nonzero(rs, j, 30), draw_nonzero(rs, j, 30)};
    i64 p = primes[rng::bounded(rs.at(j++), primes.size())];
    auto want = oracle::local_soluble_search(t, p);
    if (!want) continue;
    ++compared;
    CHECK_MESSAGE(conic::theta_padic(t, p) == (*want ? 1 : 0),
                  "t=(" << t[0] << "," << t[1] << "," << t[2] << ") p=" << p);
  }
  CHECK(compared > 300);  // the skip path must stay rare
}

TEST_CASE("theta_global: pinned values and the product structure") {
  CHECK(conic::theta_global({1, 1, 1}) == 1);
  CHECK(conic::theta_global({1, 1, 3}) == 0);
  CHECK(conic::theta_global({1, 1, 2}) == 1);   // 1 + 1 = 2
  CHECK(conic::theta_global({1, 2, 3}) == 1);   // 1 + 2 = 3
  CHECK(conic::theta_global({-3, -5, 7}) == 0); // real failure
  CHECK(conic::theta_global({6, 10, 15}) == 1); // reduces to 5x^2+3y^2=2z^2, point (5,3,4)
  CHECK(conic::theta_global({1, 5, 1}) == 1);   // zero-coordinate witness (1,0,1)
  CHECK(conic::theta_global({2, 3, 1}) == 0);   // 2x^2+3y^2=z^2 fails at 3

  // A sieve covering the coefficients gives identical answers.
  nt::FactorSieve sieve(200);
  for (i64 a = -6; a <= 6; ++a)
    for (i64 b = -6; b <= 6; ++b)
      for (i64 c = -6; c <= 6; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        CHECK(conic::theta_global({a, b, c}) == conic::theta_global({a, b, c}, &sieve));
      }
}

TEST_CASE("theta_global: invariant under scalings") {
  rng::CounterStream rs(0x5CA1EDULL);
  u64 j = 0;
  for (int iter = 0; iter < 300; ++iter) {
    Triple t{draw_nonzero(rs, j, 40), draw_nonzero(rs, j, 40), draw_nonzero(rs, j, 40)};
    int base = conic::theta_global(t);
    for (i64 lam : {2, -3, 5, -1}) {
      Triple s{lam * t[0], lam * t[1], lam * t[2]};
      CHECK_MESSAGE(conic::theta_global(s) == base,
                    "lambda=" << lam << " t=(" << t[0] << "," << t[1] << "," << t[2] << ")");
    }
    // Per-coordinate square scaling: x -> x/2 etc. gives a bijection on points.
    Triple sq{4 * t[0], 9 * t[1], 25 * t[2]};
    CHECK(conic::theta_global(sq) == base);
  }
}

TEST_CASE("reduce_conic: pinned example 6x^2 + 10y^2 = 15z^2") {
  auto red = conic::reduce_conic({6, 10, 15});
  CHECK(red.g == 1);
  CHECK(red.b == std::array<i64, 3>{1, 1, 1});
  CHECK(red.c == std::array<i64, 3>{6, 10, 15});
  CHECK(red.m01 == 2);
  CHECK(red.m02 == 3);
  CHECK(red.m12 == 5);
  CHECK(red.l == std::array<i64, 3>{1, 1, 1});
  CHECK(red.abc == Triple{5, 3, 2});

  // Model point (1,1,2) on 5X^2 + 3Y^2 = 2Z^2 pulls back to (5,3,4).
  Triple pulled = red.map_point({1, 1, 2});
  CHECK(pulled == Triple{5, 3, 4});
  CHECK(on_conic({6, 10, 15}, pulled));
}

TEST_CASE("reduce_conic: pinned example with gcd, squares, and signs") {
  auto red = conic::reduce_conic({8, -12, 50});
  CHECK(red.g == 2);
  CHECK(red.b == std::array<i64, 3>{2, 1, 5});
  CHECK(red.c == std::array<i64, 3>{1, -6, 1});
  CHECK(red.abc == Triple{1, -6, 1});
  // X^2 - 6Y^2 = Z^2 has the point (1,0,1); it pulls back to (5,0,2).
  Triple pulled = red.map_point({1, 0, 1});
  CHECK(pulled == Triple{5, 0, 2});
  CHECK(on_conic({8, -12, 50}, pulled));
  CHECK(gcd3(pulled) == 1);
}

TEST_CASE("reduce_conic: model is pairwise coprime squarefree and preserves solubility") {
  rng::CounterStream rs(0x2EDBEEFULL);
  u64 j = 0;
  for (int iter = 0; iter < 400; ++iter) {
    Triple t{draw_nonzero(rs, j, 60), draw_nonzero(rs, j, 60), draw_nonzero(rs, j, 60)};
    auto red = conic::reduce_conic(t);
    const Triple& m = red.abc;

    // Decomposition identity: t_i = g * b_i^2 * c_i.
    for (int i = 0; i < 3; ++i) {
      CHECK((i128)t[i] == (i128)red.g * red.b[i] * red.b[i] * red.c[i]);
      CHECK(red.b[i] >= 1);
      CHECK(nt::squarefree_decompose(red.c[i]).b == 1);
    }

    // Model: squarefree, pairwise coprime, same solubility everywhere.
    CHECK(nt::gcd(m[0], m[1]) == 1);
    CHECK(nt::gcd(m[0], m[2]) == 1);
    CHECK(nt::gcd(m[1], m[2]) == 1);
    for (int i = 0; i < 3; ++i) CHECK(nt::squarefree_decompose(m[i]).b == 1);
    CHECK(conic::theta_real(t) == conic::theta_real(m));
    CHECK_MESSAGE(conic::theta_global(t) == conic::theta_global(m),
                  "t=(" << t[0] << "," << t[1] << "," << t[2] << ") model=("
                        << m[0] << "," << m[1] << "," << m[2] << ")");
    for (i64 p : {2, 3, 5, 7})
      CHECK(conic::theta_padic(t, p) == conic::theta_padic(m, p));
  }
}

TEST_CASE("reduce_conic: map_point rejects trivial input and verifies by substitution") {
  auto red = conic::reduce_conic({6, 10, 15});
  CHECK_THROWS_AS(red.map_point({0, 0, 0}), std::invalid_argument);
  // A non-point on the model must be caught by the substitution check.
  CHECK_THROWS_AS(red.map_point({1, 1, 1}), std::logic_error);
}

TEST_CASE("holzer_search: pinned soluble and insoluble cases") {
  // x^2 + 2y^2 = z^2: (1, 2, 3) works.
  auto r = conic::holzer_search({1, 2, 1});
  CHECK(r.soluble);
  REQUIRE(r.point.has_value());
  CHECK(on_conic({1, 2, 1}, *r.point));
  CHECK(gcd3(*r.point) == 1);

  // x^2 + y^2 = 3z^2: insoluble, and the bound is exhausted honestly.
  auto r2 = conic::holzer_search({1, 1, 3});
  CHECK_FALSE(r2.soluble);
  CHECK_FALSE(r2.point.has_value());

  // Real-insoluble quick return examines no candidates.
  auto r3 = conic::holzer_search({-2, -3, 5});
  CHECK_FALSE(r3.soluble);
  CHECK(r3.candidates == 0);

  // All-negative coefficients are soluble (Pythagorean after negation).
  auto r4 = conic::holzer_search({-1, -1, -1});
  CHECK(r4.soluble);
  REQUIRE(r4.point.has_value());
  CHECK(on_conic({-1, -1, -1}, *r4.point));

  // Zero-coordinate witness: x^2 + 5y^2 = z^2 via (1, 0, 1).
  auto r5 = conic::holzer_search({1, 5, 1});
  CHECK(r5.soluble);
  REQUIRE(r5.point.has_value());
  CHECK(on_conic({1, 5, 1}, *r5.point));

  // Composite-rich coefficients exercise the reduction before the search.
  auto r6 = conic::holzer_search({6, 10, 15});
  CHECK(r6.soluble);
  REQUIRE(r6.point.has_value());
  CHECK(on_conic({6, 10, 15}, *r6.point));
}

TEST_CASE("holzer_search: tiny budget throws instead of guessing") {
  CHECK_THROWS_AS(conic::holzer_search({1, 1, 7}, 1), conic::SearchBudgetExceeded);
}

TEST_CASE("holzer_search vs theta_global: exhaustive small box") {
  // Independent routes: symbol formulas vs complete bounded search.
  for (i64 a = -12; a <= 12; ++a)
    for (i64 b = -12; b <= 12; ++b)
      for (i64 c = -12; c <= 12; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        Triple t{a, b, c};
        auto res = conic::holzer_search(t);
        CHECK_MESSAGE(res.soluble == (conic::theta_global(t) == 1),
                      "t=(" << a << "," << b << "," << c << ")");
        if (res.soluble) {
          REQUIRE(res.point.has_value());
          CHECK(on_conic(t, *res.point));
          CHECK(gcd3(*res.point) == 1);
        }
      }
}

TEST_CASE("holzer_search vs theta_global: random larger coefficients") {
  rng::CounterStream rs(0x4012E5ULL);
  u64 j = 0;
  for (int iter = 0; iter < 200; ++iter) {
    Triple t{draw_nonzero(rs, j, 500), draw_nonzero(rs, j, 500), draw_nonzero(rs, j, 500)};
    auto res = conic::holzer_search(t);
    CHECK_MESSAGE(res.soluble == (conic::theta_global(t) == 1),
                  "t=(" << t[0] << "," << t[1] << "," << t[2] << ")");
    if (res.soluble) {
      CHECK(on_conic(t, *res.point));
      CHECK(gcd3(*res.point) == 1);
    }
  }
}

TEST_CASE("holzer_search: found points match the box-search oracle's solubility") {
  // The box oracle proves solubility only (a miss may mean a large point),
  // so compare one-sidedly: oracle point found => holzer must agree.
  rng::CounterStream rs(0xB0B5EA2C4ULL);
  u64 j = 0;
  for (int iter = 0; iter < 60; ++iter) {
    Triple t{draw_nonzero(rs, j, 25), draw_nonzero(rs, j, 25), draw_nonzero(rs, j, 25)};
    auto brute = oracle::brute_conic_point(t, 40);
    auto res = conic::holzer_search(t);
    if (brute) {
      CHECK_MESSAGE(res.soluble, "t=(" << t[0] << "," << t[1] << "," << t[2] << ")");
    }
  }
}

TEST_CASE("residue_class_applicability: pinned classes") {
  auto a1 = conic::residue_class_applicability({1, 1, 1}, 8);
  CHECK(a1.applicable);
  CHECK(a1.reason.empty());

  auto a2 = conic::residue_class_applicability({2, 1, 1}, 8);
  CHECK_FALSE(a2.applicable);
  CHECK_FALSE(a2.reason.empty());

  CHECK(conic::residue_class_applicability({3, 5, 7}, 72).applicable);
  CHECK_FALSE(conic::residue_class_applicability({3, 5, 3}, 72).applicable);
  CHECK_FALSE(conic::residue_class_applicability({0, 1, 1}, 8).applicable);
  CHECK_FALSE(conic::residue_class_applicability({1, 1, 4}, 8).applicable);
  CHECK(conic::residue_class_applicability({1, 1, 1}, 200).applicable);
  CHECK(conic::residue_class_applicability({5, 1, 1}, 200).applicable);
  CHECK_FALSE(conic::residue_class_applicability({5, 1, 5}, 200).applicable);

  CHECK_THROWS_AS(conic::residue_class_applicability({1, 1, 1}, 12), std::invalid_argument);
}

TEST_CASE("require_squarefull_q: accepts 8|q squarefull, rejects the rest") {
  for (i64 q : {8, 16, 32, 72, 200, 392, 1800}) CHECK_NOTHROW(conic::require_squarefull_q(q));
  for (i64 q : {0, -8, 1, 2, 4, 9, 12, 24, 40, 100}) {
    CHECK_THROWS_AS(conic::require_squarefull_q(q), std::invalid_argument);
  }
}

TEST_CASE("residue_class_applicability: applicable classes really are deterministic") {
  // For every p | q, theta_p must be constant across lifts of the class.
  rng::CounterStream rs(0xDE7E2217ULL);
  u64 j = 0;
  for (i64 q : {8, 72}) {
    auto qf = nt::factorize(q);
    int tested = 0;
    while (tested < 25) {
      Triple n{(i64)rng::bounded(rs.at(j++), (u64)q), (i64)rng::bounded(rs.at(j++), (u64)q),
               (i64)rng::bounded(rs.at(j++), (u64)q)};
      auto app = conic::residue_class_applicability(n, q);
      if (!app.applicable) continue;
      ++tested;
      for (const auto& pp : qf.factors) {
        i64 p = pp.p;
        int seen = -1;
        for (int lift = 0; lift < 40; ++lift) {
          Triple t{n[0] + q * (i64)rng::bounded(rs.at(j++), 300),
                   n[1] + q * (i64)rng::bounded(rs.at(j++), 300),
                   n[2] + q * (i64)rng::bounded(rs.at(j++), 300)};
          if (t[0] == 0 || t[1] == 0 || t[2] == 0) continue;
          int th = conic::theta_padic(t, p);
          if (seen < 0) {
            seen = th;
          } else {
            CHECK_MESSAGE(th == seen, "q=" << q << " p=" << p << " class=(" << n[0] << ","
                                           << n[1] << "," << n[2] << ")");
          }
        }
      }
    }
  }
}

#pragma once
// Sparse homogeneous coefficient families F = (F0, F1, F2) in n+1 integer
// variables. A parameter point k selects the diagonal conic
//   F0(k) x^2 + F1(k) y^2 = F2(k) z^2,
// so a family is a map from Z^{n+1} to conic coefficient triples. This header
// owns the family representation, exact evaluation, and the text round-trip;
// the counting and smoothness-condition logic lives in birch.hpp.

#include <hmlab/int128.hpp>
#include <hmlab/nt.hpp>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace hmlab {
// Same alias as in conic.hpp (identical redeclaration is well-formed); the
// family layer does not depend on the conic library.
using Triple = std::array<i64, 3>;
}

namespace hmlab::family {

// One monomial coeff * y_0^{e_0} ... y_n^{e_n}.
struct Monomial {
  i64 coeff = 0;
  std::vector<int> exps;  // size n+1, nonnegative, summing to the form degree
};

// A homogeneous form as a sparse monomial list.
struct Form {
  std::vector<Monomial> terms;
};

// Whether the rank/dimension hypothesis behind the counting theorem was
// certified by the implementation or merely asserted by the user. Families
// outside the decidable classes (linear, diagonal-in-squares) are never
// silently promoted to `checked`.
enum class BirchAssertion { checked, user_asserted };

struct PolynomialFamily {
  int n = 0;  // parameters y_0..y_n, so n+1 variables
  int d = 1;  // common homogeneous degree of F0, F1, F2
  std::array<Form, 3> F{};
  BirchAssertion birch_assertion = BirchAssertion::user_asserted;
};

// The linear family F = (y0, y1, y2): n = 2, d = 1, certified `checked`.
PolynomialFamily identity_family();

// True when every monomial of every F_i has exactly n+1 exponents summing
// to d and a nonzero coefficient, and each F_i is nonempty.
bool well_formed(const PolynomialFamily& fam);

// Exact evaluation of one form at k (size n+1). Accumulates in 128 bits and
// throws std::overflow_error if any power, term, or the total leaves the
// 64-bit result range (so downstream conic code always sees exact i64s).
i64 evaluate_form(const Form& form, const std::vector<i64>& k);

// (F0(k), F1(k), F2(k)), exact.
Triple evaluate_family(const PolynomialFamily& fam, const std::vector<i64>& k);

// Text format, one directive per line; '#' starts a comment:
//   n 2
//   d 1
//   F0 1  1 0 0      # coefficient, then n+1 exponents
//   F1 1  0 1 0
//   F2 1  0 0 1
// Repeated F_i lines append monomials. Homogeneity of degree d is validated
// for every monomial. Throws std::invalid_argument on malformed input.
PolynomialFamily parse_family(std::string_view text);

// Inverse of parse_family up to whitespace; parse(format(f)) == f.
std::string format_family(const PolynomialFamily& fam);

bool operator==(const Monomial& a, const Monomial& b);
bool operator==(const Form& a, const Form& b);
bool operator==(const PolynomialFamily& a, const PolynomialFamily& b);

}  // namespace hmlab::family

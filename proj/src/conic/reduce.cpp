// Reduction of t0 x0^2 + t1 x1^2 = t2 x2^2 to a pairwise coprime squarefree
// model, in three steps that each preserve solubility over every field:
//   1. divide out g = gcd(t0, t1, t2)                       (same equation);
//   2. strip square parts t_i/g = b_i^2 c_i via X_i = b_i x_i;
//   3. multiply the c-equation by m01 m02 m12 and absorb the pairwise gcds
//      into the variables: Y0 = m01 m02 X0, Y1 = m01 m12 X1, Y2 = m02 m12 X2
//      turns c0 X0^2 + c1 X1^2 = c2 X2^2 into a Y0^2 + b Y1^2 = c Y2^2 with
//      (a, b, c) = (m12 l0, m02 l1, m01 l2).
// Primitivity after step 1 makes the gcd triple of the c_i equal 1, which is
// what keeps the m_ij pairwise coprime and the division defining l_i exact.

#include <stdexcept>

#include "hmlab/conic.hpp"

namespace hmlab::conic {

ReducedConic reduce_conic(const Triple& t) {
  require_nonzero(t, "reduce_conic");
  ReducedConic r;
  r.input = t;
  r.g = nt::gcd(nt::gcd(t[0], t[1]), t[2]);
  for (int i = 0; i < 3; ++i) {
    auto [bi, ci] = nt::squarefree_decompose(t[i] / r.g);
    r.b[i] = bi;
    r.c[i] = ci;
  }
  r.m01 = nt::gcd(r.c[0], r.c[1]);
  r.m02 = nt::gcd(r.c[0], r.c[2]);
  r.m12 = nt::gcd(r.c[1], r.c[2]);
  if (nt::gcd(r.m01, r.m02) != 1 || nt::gcd(r.m01, r.m12) != 1 || nt::gcd(r.m02, r.m12) != 1) {
    throw std::logic_error("reduce_conic: pairwise gcds not coprime (primitivity violated)");
  }
  r.l[0] = r.c[0] / (r.m01 * r.m02);
  r.l[1] = r.c[1] / (r.m01 * r.m12);
  r.l[2] = r.c[2] / (r.m02 * r.m12);
  r.abc = {mul_checked(r.m12, r.l[0]), mul_checked(r.m02, r.l[1]),
           mul_checked(r.m01, r.l[2])};
  if (nt::gcd(r.abc[0], r.abc[1]) != 1 || nt::gcd(r.abc[0], r.abc[2]) != 1 ||
      nt::gcd(r.abc[1], r.abc[2]) != 1) {
    throw std::logic_error("reduce_conic: model not pairwise coprime");
  }
  return r;
}

Triple ReducedConic::map_point(const Triple& y) const {
  // Model -> c-equation: X0 = m12 Y0, X1 = m02 Y1, X2 = m01 Y2.
  // c-equation -> input: x_i = X_i * (b0 b1 b2 / b_i), then reduce.
  i128 B = (i128)b[0] * b[1] * b[2];
  i128 x0 = (i128)y[0] * m12 * (B / b[0]);
  i128 x1 = (i128)y[1] * m02 * (B / b[1]);
  i128 x2 = (i128)y[2] * m01 * (B / b[2]);
  i128 g = x0 < 0 ? -x0 : x0;
  for (i128 v : {x1, x2}) {
    i128 a = v < 0 ? -v : v;
    while (a != 0) {
      i128 tmp = g % a;
      g = a;
      a = tmp;
    }
  }
  if (g == 0) throw std::invalid_argument("ReducedConic::map_point: trivial point");
  Triple out{narrow_checked(x0 / g), narrow_checked(x1 / g), narrow_checked(x2 / g)};
  i128 lhs = (i128)input[0] * out[0] * out[0] + (i128)input[1] * out[1] * out[1];
  i128 rhs = (i128)input[2] * out[2] * out[2];
  if (lhs != rhs) throw std::logic_error("ReducedConic::map_point: verification failed");
  return out;
}

}  // namespace hmlab::conic

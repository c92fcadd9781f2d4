#pragma once
// Closed-form and measured constants behind the census asymptotics: local
// densities delta_p, the alpha/beta/gamma factors of the progression count,
// the leading census constant, the stratification density rho, p-adic and
// archimedean solubility measures for a polynomial family, and the family
// count constant assembled from them.

#include <hmlab/conic.hpp>
#include <hmlab/family.hpp>
#include <hmlab/rational.hpp>

#include <array>
#include <stdexcept>
#include <vector>

namespace hmlab::constants {

using conic::Triple;

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// ------------------------------------------------------------ Euler products --

struct EulerProductConfig {
  i64 pmax = 10'000;  // prime cutoff, >= 3
};

// A truncated Euler product with an empirical tail indicator: the change in
// value between cutoff pmax/10 and cutoff pmax. No analytic tail bound is
// asserted anywhere; the delta is reported for the caller to judge.
struct EulerValue {
  long double value = 0.0L;
  long double last_decade_delta = 0.0L;
  i64 pmax = 0;
};

// -------------------------------------------------- progression-count pieces --

// Local density of soluble conics in the residue class n mod q at the prime p.
//   p | q  : theta_p on the class (0 or 1; the class determines theta_p).
//   p !| q : the exact rational (1+1/p+1/p^2)(1+1/(2p)+1/p^2)/(1-1/p^2)^2.
// pre: q squarefull with 8 | q, and n passes residue_class_applicability.
// Throws std::invalid_argument / std::domain_error on violated hypotheses.
Rat delta_p(const Triple& n, i64 q, i64 p);

// The 0/1 factor alpha(b, m, r) of the progression main term:
//   mu^2(gcd(q, r012)) * [gcd(q, r012, m012) = 1] * prod_i [gcd(q, r_i, b_j, b_k) = 1].
// Independent of the representatives of r mod q. m = (m01, m02, m12).
int alpha_factor(const std::array<i64, 3>& b, const std::array<i64, 3>& m,
                 const Triple& r, i64 q);

// The Euler factor beta_q(b, m): product over odd primes p <= cfg.pmax of
//   (1 - 1/p)^{3/2} * (1 + #pairs / (2p)),
// with #pairs = #{(i,j): i<j, p !| m012 * gcd(b_i, b_j) * q}.
EulerValue beta_factor(const std::array<i64, 3>& b, const std::array<i64, 3>& m,
                       i64 q, const EulerProductConfig& cfg);

// gamma_n(b, m): the number of residue triples r mod q with
//   b_i^2 m_ij m_ik r_i = n_i (mod q)  for all i,
//   gcd(r_i, q, b_j, b_k) = 1          for all i,
//   p^2 !| r012 m012                   for all p | q.
// `brute` counts directly from that definition; `closed` evaluates the
// factorized four-term product over p | q (with the vanishing guards).
// pre: q squarefull with 8 | q; n in [0,q)^3 passing the valuation caps.
enum class GammaMethod { brute, closed };
i64 gamma_count(const Triple& n, i64 q, const std::array<i64, 3>& b,
                const std::array<i64, 3>& m, GammaMethod method);

// Leading constant of the census main term for the class n mod q:
//   (2 / pi^{3/2}) * phi(q)^{-3} * prod_{p <= pmax} (1 - 1/p)^{3/2} delta_p(n),
// the main term being constant * B^3 / (log B)^{3/2}.
// pre: as for delta_p. A vanishing theta_p for some p | q gives value 0.
EulerValue predicted_census_constant(const Triple& n, i64 q,
                                     const EulerProductConfig& cfg);

// ------------------------------------------------------------ stratification --

// Exponents and modulus of the stratification level z >= 2:
//   m_p(z) = ceil(z) + 2*[p = 2],  W_z = prod_{p <= z} p^{m_p(z)}.
// Throws BudgetExceeded when W_z leaves the 64-bit range.
int stratification_exponent(i64 p, double z);
i64 stratification_modulus(double z);

// Density of the soluble class n mod W_z among coprime triples:
//   rho(n, W_z) = (2 / pi^{3/2}) * W_z^{-3} * prod_{p <= z} (1-1/p)^{-3/2} theta_p(n).
// pre: n passes residue_class_applicability(n, W_z) (class-determined theta).
long double rho_density(const Triple& n, double z);

// --------------------------------------------------------- family measures ---

// Depth-by-depth refinement of the p-adic solubility measure
//   c_p = mu_p{ t in Z_p^{n+1} : theta_p(F0(t), F1(t), F2(t)) = 1 },
// by subdividing residue classes mod p^j until theta_p is decided on the
// class (all three values have valuation readable from the residue). value[j-1]
// is the measure proven soluble by depth j; the true c_p lies within
// [value.back(), value.back() + unresolved].
struct CpResult {
  std::vector<long double> value;  // cumulative, one entry per depth 1..N
  std::vector<long double> delta;  // newly decided soluble mass per depth
  long double unresolved = 0.0L;   // measure still undecided at depth N
  i64 undecided_nodes = 0;         // classes still undecided at depth N
  i64 visited_nodes = 0;
};

// pre: p prime, depth >= 1, F well-formed. Throws BudgetExceeded when the
// refinement tree exceeds node_budget (reported honestly rather than
// returning a silently truncated value). The walk is parallelized over
// subtrees with a worker-count-independent combine order, so results are
// bit-identical for any HMLAB_MAX_WORKERS.
//
// Decision rules: by default a class is decided only when all three square
// classes F_i are pinned by the residues, which resolves solubility in both
// directions and yields smoothly decaying per-depth deltas. With
// square_shortcut = true, classes with exactly one unpinned residue are
// additionally decided (solubly) when a pinned product is a p-adic square
// ((A,B)_p = 1 whenever A or B is a square, and (F0 F2, F1 F2) =
// (F0,F1)(F2,-F0 F1) settles the F2-unknown case). The shortcut shrinks the
// unresolved measure faster but redistributes when soluble mass is credited,
// so the delta sequence is no longer monotone.
CpResult local_measure_cp(const family::PolynomialFamily& F, i64 p, int depth,
                          i64 node_budget = 250'000'000, bool square_shortcut = false);

// Deepest local_measure_cp run whose refinement tree fits in node_budget,
// never deeper than max_depth. The node count of the next-deeper run is known
// exactly from (visited_nodes, undecided_nodes), so the returned run is the
// last one before the budget would be exceeded.
CpResult local_measure_cp_adaptive(const family::PolynomialFamily& F, i64 p,
                                   int max_depth, i64 node_budget,
                                   bool square_shortcut = false);

// Archimedean solubility volume
//   c_inf = vol{ t in [-1,1]^{n+1} : theta_R(F0(t), F1(t), F2(t)) = 1 }.
// Grid mode: midpoint rule at `resolution` cells per axis; the error estimate
// is |value(resolution) - value(resolution/2)|. Monte Carlo mode: `samples`
// points from a counter RNG at `seed`; the error estimate is the binomial
// standard error. Points with some F_i = 0 never count as soluble.
struct CinftyConfig {
  bool monte_carlo = false;
  i64 resolution = 64;
  i64 samples = 1'000'000;
  u64 seed = 0xc0ffee;
};
struct CinftyValue {
  long double value = 0.0L;
  long double error_estimate = 0.0L;
};
CinftyValue archimedean_cinfty(const family::PolynomialFamily& F, const CinftyConfig& cfg);

// ------------------------------------------------------- assembled constants --

// Configuration for the family-count constant. Primes up to measured_pmax get
// c_p from local_measure_cp_adaptive (deepest depth within node_budget, at
// most `depth`), estimated as the midpoint of the proven bracket
// [decided, decided + unresolved]; beyond measured_pmax the factor uses the
// exact closed form when the family is the linear identity family, and 1
// otherwise (recorded in closed_tail of the result).
struct FamilyConstantConfig {
  i64 pmax = 10'000;
  int depth = 8;
  i64 measured_pmax = 7;
  i64 node_budget = 150'000'000;
  CinftyConfig cinfty;
};
struct FamilyConstantValue {
  long double value = 0.0L;
  long double last_decade_delta = 0.0L;
  long double cinfty = 0.0L;
  long double cinfty_error = 0.0L;
  long double unresolved_total = 0.0L;  // summed unresolved c_p mass (measured primes)
  bool closed_tail = false;             // identity-family tail formula in use
};

// The family count constant
//   c(F) = (n+1)^{1/2} / (pi d)^{3/2} * c_inf *
//          prod_p (1 - 1/p)^{-1/2} (1 + 1/p + ... + 1/p^n) c_p,
// the main term over height X being c(F) * X / (log X)^{3/2} with
// H(y) = max|y_i|^{n+1}. pre: d >= 1, F well-formed.
FamilyConstantValue predicted_family_constant(const family::PolynomialFamily& F,
                                              const FamilyConstantConfig& cfg);

// The q = 1 box-census analogue of predicted_census_constant: the main-term
// constant for counting soluble coprime triples in [1,B]^3 with no congruence
// restriction,
//   (2 / pi^{3/2}) * prod_{p <= pmax} (1 - 1/p)^{-3/2} (1 - 1/p^3) c_p,
// with the exact 2-adic density c_2 = 7/12 of the identity family and the odd
// factors from the exact closed form. Used by cross-formula checks against
// the independently measured route.
EulerValue universal_box_constant(const EulerProductConfig& cfg);

}  // namespace hmlab::constants

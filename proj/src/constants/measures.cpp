// Stratification density rho, p-adic family measures c_p, the archimedean
// volume c_inf, and the assembled family constant.
#include <hmlab/constants.hpp>
#include <hmlab/parallel.hpp>
#include <hmlab/rng.hpp>

#include <atomic>
#include <cmath>
#include <numeric>
#include <vector>

namespace hmlab::constants {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

std::vector<i64> primes_upto(double z) {
  std::vector<i64> primes;
  for (i64 p = 2; (double)p <= z; ++p) {
    bool prime = p >= 2;
    for (i64 d = 2; d * d <= p; ++d) {
      if (p % d == 0) { prime = false; break; }
    }
    if (prime) primes.push_back(p);
  }
  return primes;
}

}  // namespace

int stratification_exponent(i64 p, double z) {
  if (z < 2.0) throw std::invalid_argument("stratification_exponent: z must be >= 2");
  if (p < 2) throw std::invalid_argument("stratification_exponent: p must be >= 2");
  return (int)std::ceil(z) + (p == 2 ? 2 : 0);
}

i64 stratification_modulus(double z) {
  if (z < 2.0) throw std::invalid_argument("stratification_modulus: z must be >= 2");
  i128 w = 1;
  for (i64 p : primes_upto(z)) {
    int e = stratification_exponent(p, z);
    while (e-- > 0) {
      w *= p;
      if (w > INT64_MAX) {
        throw BudgetExceeded("stratification_modulus: W_z exceeds the 64-bit range");
      }
    }
  }
  return (i64)w;
}

long double rho_density(const Triple& n, double z) {
  const i64 w = stratification_modulus(z);
  const Triple nr = {nt::mod_floor(n[0], w), nt::mod_floor(n[1], w), nt::mod_floor(n[2], w)};
  conic::Applicability app = conic::residue_class_applicability(nr, w);
  if (!app.applicable) {
    throw std::domain_error("rho_density: class fails the valuation caps: " + app.reason);
  }
  long double log_value = logl(2.0L) - 1.5L * logl(kPi) - 3.0L * logl((long double)w);
  for (i64 p : primes_upto(z)) {
    if (conic::theta_padic(nr, p) == 0) return 0.0L;
    log_value += -1.5L * logl(1.0L - 1.0L / (long double)p);
  }
  return expl(log_value);
}

// ------------------------------------------------------------- p-adic c_p ----

namespace {

// F_i(t) mod M via the sparse monomial list; residues of t lie in [0, M).
i64 eval_form_mod(const family::Form& form, const std::vector<i64>& t, i64 M) {
  i128 total = 0;
  for (const family::Monomial& mono : form.terms) {
    i128 term = nt::mod_floor(mono.coeff, M);
    for (size_t j = 0; j < mono.exps.size(); ++j) {
      for (int e = 0; e < mono.exps[j]; ++e) term = term * t[j] % M;
    }
    total = (total + term) % M;
  }
  return (i64)total;
}

// Shared read-only walk parameters plus the global node-budget counter.
struct CpShared {
  const family::PolynomialFamily* fam = nullptr;
  i64 p = 0;
  int max_depth = 0;
  int vars = 0;  // n+1
  bool square_shortcut = false;
  std::vector<long double> level_measure;  // p^{-vars*j} for j = 0..max_depth
  i64 budget = 0;
  mutable std::atomic<i64> counted{0};
};

// Per-subtree tallies, merged in a fixed (worker-count independent) order.
struct CpTally {
  std::vector<long double> soluble_at;  // per level
  long double unresolved = 0.0L;
  i64 undecided_nodes = 0;
  i64 visited = 0;
  i64 unflushed = 0;
};

void cp_count_node(const CpShared& sh, CpTally& t) {
  ++t.visited;
  if (++t.unflushed >= 8192) {
    i64 seen = sh.counted.fetch_add(t.unflushed, std::memory_order_relaxed) + t.unflushed;
    t.unflushed = 0;
    if (seen > sh.budget) {
      throw BudgetExceeded("local_measure_cp: refinement tree exceeds the node budget");
    }
  }
}

// Is the p-adic square class of F_i pinned by a residue r mod p^j? Odd p:
// any nonzero residue (valuation < j exact, unit mod p determined across the
// class). p = 2: additionally v_2(r) <= j-3, so the unit is known mod 8.
bool square_class_pinned(i64 p, i64 r, int j) {
  if (r == 0) return false;
  if (p != 2) return true;
  int v = 0;
  while ((r & 1) == 0) { r >>= 1; ++v; }
  return v <= j - 3;
}

// Whether theta_p is decided on the class (point mod p^j = M); if so, which
// way. All three square classes pinned: evaluate directly. Under the square
// shortcut, classes with exactly one unpinned residue are also decided when a
// pinned product is a p-adic square, since the symbol (F0 F2, F1 F2)_p then
// no longer depends on the unknown coordinate:
//   F0 unknown: F1 F2 square  =>  (A, F1 F2) = 1 for all A     => soluble;
//   F1 unknown: F0 F2 square  =>  (F0 F2, B) = 1 for all B     => soluble;
//   F2 unknown: (F0 F2, F1 F2) = (F0, F1) (F2, -F0 F1), so -F0 F1 square
//               => theta = [(F0, F1)_p = 1] independent of F2.
// (The degenerate completions F_i = 0 form a null set and agree with the
// decided value anyway.) Everything else stays unresolved.
bool cp_decide(const CpShared& sh, const std::vector<i64>& point, int j, i64 M, int* theta) {
  i64 r[3];
  int unknown_count = 0, unknown_idx = -1;
  for (int i = 0; i < 3; ++i) {
    r[i] = eval_form_mod(sh.fam->F[(size_t)i], point, M);
    if (!square_class_pinned(sh.p, r[i], j)) { ++unknown_count; unknown_idx = i; }
  }
  if (unknown_count == 0) {
    *theta = conic::theta_padic({r[0], r[1], r[2]}, sh.p);
    return true;
  }
  if (!sh.square_shortcut || unknown_count != 1) return false;
  const int a = unknown_idx == 0 ? 1 : 0;
  const int b = unknown_idx == 2 ? 1 : 2;
  i128 s = (i128)r[a] * r[b];
  if (unknown_idx == 2) s = -s;
  // p-adic squareness of s from its (exactly pinned) valuation and unit.
  i64 v = 0;
  while (s % sh.p == 0) { s /= sh.p; ++v; }
  if (v % 2 != 0) return false;
  i64 unit = nt::mod_floor128(s, sh.p == 2 ? 8 : sh.p);
  if (sh.p == 2 ? (unit != 1) : nt::jacobi(unit, sh.p) != 1) return false;
  if (unknown_idx == 2) {
    *theta = nt::hilbert_symbol_split(r[0], 1, r[1], 1, nt::Place::prime(sh.p)) == 1 ? 1 : 0;
  } else {
    *theta = 1;
  }
  return true;
}

// Expand the children of an undecided node at level j (point defined mod
// M = p^j), recursing depth-first into children that stay undecided.
void cp_expand(const CpShared& sh, CpTally& t, std::vector<i64>& point, int j, i64 M) {
  const i64 step = M;
  const i64 M2 = M * sh.p;
  const int jc = j + 1;
  std::vector<int> digit((size_t)sh.vars, 0);
  while (true) {
    cp_count_node(sh, t);
    int theta = 0;
    if (cp_decide(sh, point, jc, M2, &theta)) {
      if (theta == 1) t.soluble_at[(size_t)jc] += sh.level_measure[(size_t)jc];
    } else if (jc == sh.max_depth) {
      t.unresolved += sh.level_measure[(size_t)jc];
      ++t.undecided_nodes;
    } else {
      cp_expand(sh, t, point, jc, M2);
    }
    int k = 0;
    while (k < sh.vars) {
      point[(size_t)k] += step;
      if (++digit[(size_t)k] < sh.p) break;
      point[(size_t)k] -= step * sh.p;
      digit[(size_t)k] = 0;
      ++k;
    }
    if (k == sh.vars) break;
  }
}

}  // namespace

CpResult local_measure_cp(const family::PolynomialFamily& F, i64 p, int depth,
                          i64 node_budget, bool square_shortcut) {
  if (!family::well_formed(F)) {
    throw std::invalid_argument("local_measure_cp: family is not well formed");
  }
  if (p < 2) throw std::invalid_argument("local_measure_cp: p must be a prime >= 2");
  if (depth < 1) throw std::invalid_argument("local_measure_cp: depth must be >= 1");
  if (node_budget < 1) throw std::invalid_argument("local_measure_cp: node_budget must be positive");
  // Residues mod p^depth must stay comfortably inside i64 for eval_form_mod.
  i128 M_top = 1;
  for (int j = 0; j < depth; ++j) {
    M_top *= p;
    if (M_top > ((i128)1 << 60)) {
      throw std::invalid_argument("local_measure_cp: p^depth exceeds the supported range");
    }
  }

  const int vars = F.n + 1;
  CpShared sh;
  sh.fam = &F;
  sh.p = p;
  sh.max_depth = depth;
  sh.vars = vars;
  sh.square_shortcut = square_shortcut;
  sh.budget = node_budget;
  sh.level_measure.assign((size_t)depth + 1, 0.0L);
  {
    const long double cell = powl((long double)p, -(long double)vars);
    long double m = 1.0L;
    for (int j = 0; j <= depth; ++j) { sh.level_measure[(size_t)j] = m; m *= cell; }
  }

  CpTally total;
  total.soluble_at.assign((size_t)depth + 1, 0.0L);
  total.visited = 1;  // the root class: everything mod p^0

  // Phase 1: breadth-first expansion of whole levels while the undecided
  // frontier is small, so phase 2 has enough independent subtrees to spread
  // across workers.
  std::vector<std::vector<i64>> frontier{std::vector<i64>((size_t)vars, 0)};
  int flevel = 0;
  i64 Mf = 1;
  constexpr i64 kFrontierCap = 32768;
  while (flevel < depth && !frontier.empty()) {
    i128 children = (i128)frontier.size();
    for (int v = 0; v < vars; ++v) children *= p;
    if (children > kFrontierCap) break;
    std::vector<std::vector<i64>> next;
    const i64 M2 = Mf * p;
    const int jc = flevel + 1;
    for (std::vector<i64>& point : frontier) {
      std::vector<int> digit((size_t)vars, 0);
      while (true) {
        cp_count_node(sh, total);
        int theta = 0;
        if (cp_decide(sh, point, jc, M2, &theta)) {
          if (theta == 1) total.soluble_at[(size_t)jc] += sh.level_measure[(size_t)jc];
        } else if (jc == depth) {
          total.unresolved += sh.level_measure[(size_t)jc];
          ++total.undecided_nodes;
        } else {
          next.push_back(point);
        }
        int k = 0;
        while (k < vars) {
          point[(size_t)k] += Mf;
          if (++digit[(size_t)k] < p) break;
          point[(size_t)k] -= Mf * p;
          digit[(size_t)k] = 0;
          ++k;
        }
        if (k == vars) break;
      }
    }
    frontier = std::move(next);
    flevel = jc;
    Mf = M2;
  }

  // Phase 2: one independent subtree walk per remaining frontier node. The
  // merge runs in frontier order on this thread, so every worker count
  // produces bit-identical tallies.
  if (flevel < depth && !frontier.empty()) {
    std::vector<CpTally> parts = par::map_chunks<CpTally>(
        (i64)frontier.size(), par::resolve_workers(0), [&](i64 c) {
          CpTally t;
          t.soluble_at.assign((size_t)depth + 1, 0.0L);
          std::vector<i64> point = frontier[(size_t)c];
          cp_expand(sh, t, point, flevel, Mf);
          return t;
        });
    for (const CpTally& t : parts) {
      for (size_t j = 0; j < total.soluble_at.size(); ++j) total.soluble_at[j] += t.soluble_at[j];
      total.unresolved += t.unresolved;
      total.undecided_nodes += t.undecided_nodes;
      total.visited += t.visited;
    }
  }

  CpResult out;
  out.value.assign((size_t)depth, 0.0L);
  out.delta.assign((size_t)depth, 0.0L);
  long double cumulative = 0.0L;
  for (int j = 1; j <= depth; ++j) {
    cumulative += total.soluble_at[(size_t)j];
    out.delta[(size_t)j - 1] = total.soluble_at[(size_t)j];
    out.value[(size_t)j - 1] = cumulative;
  }
  out.unresolved = total.unresolved;
  out.undecided_nodes = total.undecided_nodes;
  out.visited_nodes = total.visited;
  return out;
}

CpResult local_measure_cp_adaptive(const family::PolynomialFamily& F, i64 p, int max_depth,
                                   i64 node_budget, bool square_shortcut) {
  if (max_depth < 1) {
    throw std::invalid_argument("local_measure_cp_adaptive: max_depth must be >= 1");
  }
  if (node_budget < 1) {
    throw std::invalid_argument("local_measure_cp_adaptive: node_budget must be positive");
  }
  // Deepening by one level re-walks the identical tree and expands each
  // undecided leaf into p^{n+1} children, so the cost of the next depth is
  // known exactly before paying for it:
  //   visited(d+1) = visited(d) + undecided(d) * p^{n+1}.
  i64 cell = 1;
  for (int v = 0; v <= F.n; ++v) cell *= p;
  CpResult best = local_measure_cp(F, p, 1, node_budget, square_shortcut);
  for (int depth = 2; depth <= max_depth; ++depth) {
    if (best.undecided_nodes == 0) break;
    const i128 next_cost = (i128)best.visited_nodes + (i128)best.undecided_nodes * cell;
    if (next_cost > node_budget) break;
    best = local_measure_cp(F, p, depth, node_budget, square_shortcut);
  }
  return best;
}

// --------------------------------------------------------- archimedean c_inf --

namespace {

long double eval_form_real(const family::Form& form, const std::vector<long double>& t) {
  long double total = 0.0L;
  for (const family::Monomial& mono : form.terms) {
    long double term = (long double)mono.coeff;
    for (size_t j = 0; j < mono.exps.size(); ++j) {
      for (int e = 0; e < mono.exps[j]; ++e) term *= t[j];
    }
    total += term;
  }
  return total;
}

// Real solubility of f0 x^2 + f1 y^2 = f2 z^2 on sign data alone; points with
// a vanishing coefficient are never counted (the locus has measure zero).
bool real_soluble(long double f0, long double f1, long double f2) {
  if (f0 == 0.0L || f1 == 0.0L || f2 == 0.0L) return false;
  bool definite = (f0 > 0 && f1 > 0 && f2 < 0) || (f0 < 0 && f1 < 0 && f2 > 0);
  return !definite;
}

long double cinfty_grid(const family::PolynomialFamily& F, i64 res) {
  const int vars = F.n + 1;
  i128 cells = 1;
  for (int j = 0; j < vars; ++j) {
    cells *= res;
    if (cells > 200'000'000) throw BudgetExceeded("archimedean_cinfty: grid too large");
  }
  std::vector<long double> t((size_t)vars, 0.0L);
  std::vector<i64> digit((size_t)vars, 0);
  auto midpoint = [&](i64 c) { return -1.0L + (2.0L * c + 1.0L) / (long double)res; };
  for (int j = 0; j < vars; ++j) t[(size_t)j] = midpoint(0);
  i64 hits = 0;
  while (true) {
    long double f0 = eval_form_real(F.F[0], t);
    long double f1 = eval_form_real(F.F[1], t);
    long double f2 = eval_form_real(F.F[2], t);
    if (real_soluble(f0, f1, f2)) ++hits;
    int k = 0;
    while (k < vars) {
      if (++digit[(size_t)k] < res) {
        t[(size_t)k] = midpoint(digit[(size_t)k]);
        break;
      }
      digit[(size_t)k] = 0;
      t[(size_t)k] = midpoint(0);
      ++k;
    }
    if (k == vars) break;
  }
  long double cube = powl(2.0L, (long double)vars);
  return cube * (long double)hits / (long double)(i64)cells;
}

}  // namespace

CinftyValue archimedean_cinfty(const family::PolynomialFamily& F, const CinftyConfig& cfg) {
  if (!family::well_formed(F)) throw std::invalid_argument("archimedean_cinfty: malformed family");
  const int vars = F.n + 1;
  CinftyValue out;
  if (!cfg.monte_carlo) {
    if (cfg.resolution < 2) throw std::invalid_argument("archimedean_cinfty: resolution must be >= 2");
    out.value = cinfty_grid(F, cfg.resolution);
    out.error_estimate = fabsl(out.value - cinfty_grid(F, cfg.resolution / 2));
    return out;
  }
  if (cfg.samples < 1) throw std::invalid_argument("archimedean_cinfty: samples must be >= 1");
  rng::CounterStream stream{cfg.seed};
  std::vector<long double> t((size_t)vars, 0.0L);
  i64 hits = 0;
  for (i64 s = 0; s < cfg.samples; ++s) {
    for (int j = 0; j < vars; ++j) {
      u64 raw = stream.at((u64)s * (u64)vars + (u64)j);
      long double u = (long double)(raw >> 11) * 0x1.0p-53L;  // [0,1)
      t[(size_t)j] = 2.0L * u - 1.0L;
    }
    if (real_soluble(eval_form_real(F.F[0], t), eval_form_real(F.F[1], t),
                     eval_form_real(F.F[2], t))) {
      ++hits;
    }
  }
  long double cube = powl(2.0L, (long double)vars);
  long double frac = (long double)hits / (long double)cfg.samples;
  out.value = cube * frac;
  out.error_estimate = cube * sqrtl(frac * (1.0L - frac) / (long double)cfg.samples);
  return out;
}

// ------------------------------------------------------ assembled constant ---

FamilyConstantValue predicted_family_constant(const family::PolynomialFamily& F,
                                              const FamilyConstantConfig& cfg) {
  if (!family::well_formed(F)) {
    throw std::invalid_argument("predicted_family_constant: malformed family");
  }
  if (F.d < 1) throw std::invalid_argument("predicted_family_constant: d must be >= 1");
  if (cfg.pmax < 3) throw std::invalid_argument("predicted_family_constant: pmax must be >= 3");
  if (cfg.measured_pmax < 2) {
    throw std::invalid_argument("predicted_family_constant: measured_pmax must be >= 2");
  }
  if (cfg.depth < 1) throw std::invalid_argument("predicted_family_constant: depth must be >= 1");

  FamilyConstantValue out;
  const CinftyValue ci = archimedean_cinfty(F, cfg.cinfty);
  out.cinfty = ci.value;
  out.cinfty_error = ci.error_estimate;
  out.closed_tail = (F == family::identity_family());

  const int n = F.n;
  // sigma_n(p) = 1 + 1/p + ... + 1/p^n.
  auto sigma_n = [n](long double x) {
    long double s = 1.0L, term = 1.0L;
    for (int k = 0; k < n; ++k) {
      term /= x;
      s += term;
    }
    return s;
  };

  // Measured local factors: p <= measured_pmax, at the deepest depth within
  // the node budget (never deeper than cfg.depth), estimated as the midpoint
  // of the proven bracket [decided, decided + unresolved].
  long double log_measured = 0.0L;
  bool vanished = false;
  for (i64 p = 2; p <= cfg.measured_pmax && p <= cfg.pmax; ++p) {
    if (!nt::is_prime((u64)p)) continue;
    CpResult cp = local_measure_cp_adaptive(F, p, cfg.depth, cfg.node_budget,
                                            /*square_shortcut=*/true);
    out.unresolved_total += cp.unresolved;
    long double cpv = cp.value.back() + cp.unresolved / 2.0L;
    if (cpv <= 0.0L) { vanished = true; break; }
    long double x = (long double)p;
    log_measured += -0.5L * logl(1.0L - 1.0L / x) + logl(sigma_n(x)) + logl(cpv);
  }

  long double log_prefactor = 0.5L * logl((long double)(n + 1)) -
                              1.5L * logl(kPi * (long double)F.d);
  if (ci.value <= 0.0L || vanished) {
    out.value = 0.0L;
    out.last_decade_delta = 0.0L;
    return out;
  }
  log_prefactor += logl(ci.value) + log_measured;

  // Tail factors above measured_pmax: exact closed form for the identity
  // family, factor 1 otherwise (each factor tends to 1; the truncation is
  // visible through closed_tail and last_decade_delta).
  long double log_sum = 0.0L, log_at_decade = 0.0L;
  bool have_decade = cfg.pmax / 10 < 3;
  if (out.closed_tail) {
    for (i64 p = 3; p <= cfg.pmax; p += 2) {
      if (!nt::is_prime((u64)p)) continue;
      if (!have_decade && p > cfg.pmax / 10) {
        log_at_decade = log_sum;
        have_decade = true;
      }
      if (p <= cfg.measured_pmax) continue;  // already measured
      long double x = (long double)p;
      long double cp = (1.0L + 1.0L / (2 * x) + 1.0L / (x * x)) /
                       ((1.0L + 1.0L / x) * (1.0L + 1.0L / x));
      log_sum += -0.5L * logl(1.0L - 1.0L / x) + logl(sigma_n(x)) + logl(cp);
    }
  }
  if (!have_decade) log_at_decade = log_sum;

  out.value = expl(log_prefactor + log_sum);
  out.last_decade_delta = fabsl(out.value - expl(log_prefactor + log_at_decade));
  return out;
}

}  // namespace hmlab::constants

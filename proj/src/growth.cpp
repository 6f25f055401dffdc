#include "birat/growth.hpp"

#include <cmath>
#include <limits>

#include "birat/errors.hpp"

namespace birat {

namespace {

// Drops the x^k factor (eigenvalue 0 part).
IPoly strip_x(const IPoly& f) {
  size_t k = 0;
  while (k < f.size() && f[k] == 0) ++k;
  return IPoly(f.begin() + static_cast<long>(k), f.end());
}

double log_int(const Int& v) {
  signed long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

// [c, d] with c <= sqrt(x) for every x >= a and d >= sqrt(x) for every
// x <= b, width about 1e-13, via exact integer square roots.
void sqrt_interval(const Rat& a, const Rat& b, Rat& c, Rat& d) {
  Int denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 10, 13);
  Int d2 = denom * denom;
  Int lo_scaled = (a.get_num() * d2) / a.get_den();
  Int s1;
  mpz_sqrt(s1.get_mpz_t(), lo_scaled.get_mpz_t());
  Int hi_scaled;
  mpz_cdiv_q(hi_scaled.get_mpz_t(), Int(b.get_num() * d2).get_mpz_t(), b.get_den().get_mpz_t());
  Int s2;
  mpz_sqrt(s2.get_mpz_t(), hi_scaled.get_mpz_t());
  c = Rat(s1) / Rat(denom);
  d = Rat(s2 + 1) / Rat(denom);
}

}  // namespace

std::string to_string(GrowthCase c) {
  switch (c) {
    case GrowthCase::Case1_bounded: return "case1_bounded";
    case GrowthCase::Case2_linear_fibration: return "case2_linear_fibration";
    case GrowthCase::Case3_quadratic: return "case3_quadratic";
    default: return "case4_exponential";
  }
}

std::string to_string(Geometric g) {
  switch (g) {
    case Geometric::yes: return "yes";
    case Geometric::no: return "no";
    default: return "not_determined";
  }
}

std::string to_string(GkVerdict v) {
  switch (v) {
    case GkVerdict::gk3: return "gk3";
    case GkVerdict::gk4: return "gk4";
    case GkVerdict::gk5: return "gk5";
    default: return "exponential";
  }
}

double SpectralRadius::approx() const {
  return mpq_get_d(Rat((lo + hi) / 2).get_mpq_t());
}

SpectralRadius spectral_radius(const IMat& p) {
  IPoly f = char_poly(p);
  IPoly f0 = strip_x(f);
  SpectralRadius out;

  if (ipoly_deg(f0) < 1) {
    // Nilpotent: every eigenvalue is zero.
    out.factor = IPoly{Int(0), Int(1)};
    out.lo = out.hi = Rat(0);
    out.exact = true;
    return out;
  }

  if (ipoly_deg(ipoly_remove_cyclotomic(f0)) < 1) {
    // All nonzero eigenvalues are roots of unity, so rho = 1 exactly.
    out.lo = out.hi = Rat(1);
    out.exact = true;
    out.one = true;
    out.factor = (ipoly_eval(f0, Int(1)) == 0) ? IPoly{Int(-1), Int(1)}
                                               : ipoly_squarefree_part(f0);
    return out;
  }

  // rho > 1. rho^2 is the largest real root of the pair-product polynomial:
  // every real root z_i z_j has modulus <= rho^2, and rho^2 itself is the
  // product of a maximal-modulus root with its conjugate.
  out.products = ipoly_root_products(f0);
  RootInterval sq;
  if (!isolate_max_real_root(out.products, Rat(0), Rat(Int(1), Int("100000000000000000000000000")), sq))
    throw PrecisionError("failed to isolate the maximal real root of the pair-product polynomial");
  out.sq_lo = sq.lo;
  out.sq_hi = sq.hi;
  out.sq_exact = sq.exact;

  if (sq.exact) {
    // Eigenvalues of an integer matrix are algebraic integers, so a rational
    // rho^2 (and a rational rho) is an integer.
    Int y = sq.lo.get_num();
    if (mpz_perfect_square_p(y.get_mpz_t())) {
      Int r;
      mpz_sqrt(r.get_mpz_t(), y.get_mpz_t());
      out.lo = out.hi = Rat(r);
      out.exact = true;
    } else {
      sqrt_interval(sq.lo, sq.hi, out.lo, out.hi);
    }
  } else {
    sqrt_interval(sq.lo, sq.hi, out.lo, out.hi);
  }

  if (out.exact && ipoly_eval(f0, out.lo.get_num()) == 0) {
    out.factor = IPoly{-out.lo.get_num(), Int(1)};
  } else {
    IPoly prod{Int(1)};
    for (const auto& [g, mult] : ipoly_squarefree_decomposition(f0))
      if (factor_has_modulus_rho_root(g, out)) prod = ipoly_mul(prod, g);
    if (ipoly_deg(prod) < 1)
      throw PrecisionError("no characteristic factor matched the isolated spectral radius");
    out.factor = prod;
  }
  return out;
}

bool factor_has_modulus_rho_root(const IPoly& g, const SpectralRadius& rho) {
  IPoly g0 = strip_x(g);
  if (ipoly_deg(g0) < 1) return false;
  if (rho.one) return true;  // every nonzero eigenvalue has modulus 1 when rho = 1
  if (rho.lo == 0) return false;
  // g has a root of modulus rho iff its pair products include rho^2: a real
  // positive product z_a z_b = rho^2 forces |z_a| = |z_b| = rho because both
  // moduli are bounded by rho.
  IPoly gg = ipoly_root_products(g0);
  if (rho.sq_exact) return ipoly_eval(gg, rho.sq_lo.get_num()) == 0;
  return sturm_count_roots(gg, rho.sq_lo, rho.sq_hi) >= 1;
}

std::vector<Int> norm_growth(const IMat& p, int n_max) {
  std::vector<Int> out;
  IMat cur = p;
  for (int n = 1; n <= n_max; ++n) {
    out.push_back(cur.max_abs_entry());
    if (n < n_max) cur = imat_mul(cur, p);
  }
  return out;
}

int jordan_index(const IMat& p, const SpectralRadius& rho) {
  IPoly f = char_poly(p);
  auto comps = ipoly_squarefree_decomposition(f);
  int jmax = -1;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (!factor_has_modulus_rho_root(comps[i].first, rho)) continue;
    int e = comps[i].second;
    if (e > 1) {
      // Smallest exponent of this factor whose product with the remaining
      // full-multiplicity factors annihilates P = its exponent in the
      // minimal polynomial.
      for (int cand = 1; cand < comps[i].second; ++cand) {
        IPoly h = ipoly_pow(comps[i].first, static_cast<unsigned long>(cand));
        for (size_t l = 0; l < comps.size(); ++l) {
          if (l == i) continue;
          h = ipoly_mul(h, ipoly_pow(comps[l].first, static_cast<unsigned long>(comps[l].second)));
        }
        if (ipoly_eval_matrix(h, p).is_zero()) {
          e = cand;
          break;
        }
      }
    }
    if (e > jmax + 1) jmax = e - 1;
  }
  if (jmax < 0) throw DataError("no characteristic factor has a root of modulus rho");

  // Cross-check: the integer j' minimizing the spread of
  // log(||P^n|| / rho^n) - j' log n over n in [20, 60] must equal j.
  std::vector<Int> norms = norm_growth(p, 60);
  double lr = std::log(rho.approx());
  int best_j = -1;
  double best_spread = std::numeric_limits<double>::infinity();
  for (int jc = 0; jc <= static_cast<int>(p.rows()); ++jc) {
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    for (int n = 20; n <= 60; ++n) {
      if (norms[static_cast<size_t>(n - 1)] == 0)
        throw DataError("norm growth hit zero; matrix is nilpotent");
      double r = log_int(norms[static_cast<size_t>(n - 1)]) - n * lr - jc * std::log(static_cast<double>(n));
      mn = std::min(mn, r);
      mx = std::max(mx, r);
    }
    if (mx - mn < best_spread) {
      best_spread = mx - mn;
      best_j = jc;
    }
  }
  if (best_j != jmax)
    throw DataError("internal error: minimal-polynomial j=" + std::to_string(jmax) +
                    " disagrees with norm-growth fit j=" + std::to_string(best_j));
  return jmax;
}

std::vector<Rat> power_iteration_rho(const PolarizedLattice& l, const PullbackMapData& m,
                                     const DivisorClass& ample, int n_max) {
  if (intersect(l, ample, ample) <= 0) throw DataError("reference class is not positive: (E.E) <= 0");
  std::vector<DivisorClass> curves;
  for (const auto& [label, c] : l.known_curves()) curves.push_back(c);
  if (!is_nef_against(l, ample, curves))
    throw DataError("reference class is negative against a known curve");
  if (!m.stability().iteration_certified())
    throw CapabilityError("power iteration needs a stability certificate covering iteration");

  std::vector<Rat> ratios;
  DivisorClass cur = ample;
  Int prev = intersect(l, cur, ample);
  for (int n = 1; n <= n_max; ++n) {
    cur = pullback(m, cur);
    Int val = intersect(l, cur, ample);
    if (prev == 0) throw DataError("degenerate input: zero intersection in power-iteration ratio");
    ratios.push_back(Rat(val) / Rat(prev));
    prev = val;
  }
  return ratios;
}

std::string GrowthData::rho_string() const {
  std::string dec = rho_exact ? rho_lo.get_str() : rat_to_decimal(Rat((rho_lo + rho_hi) / 2), 12);
  return dec + " (root of " + ipoly_to_string(rho_minpoly) + ")";
}

GrowthData classify(const IMat& p, const StabilityCertificate& stability, bool fibration_flag) {
  SpectralRadius rho = spectral_radius(p);
  if (rho.hi < 1) throw DataError("spectral radius below 1: not a pullback action on a polarized lattice");
  int j = jordan_index(p, rho);

  GrowthData out;
  out.rho_minpoly = rho.factor;
  out.rho_lo = rho.lo;
  out.rho_hi = rho.hi;
  out.rho_exact = rho.exact;
  out.j = j;
  out.formal = !stability.iteration_certified();
  out.fibration_flag = fibration_flag;

  if (rho.one) {
    if (j >= 3)
      throw DataError("growth data (rho=1, j=" + std::to_string(j) +
                      ") is impossible for a surface map; input data inconsistent");
    switch (j) {
      case 0:
        out.growth_case = GrowthCase::Case1_bounded;
        out.geometric = Geometric::yes;
        out.gk = GkVerdict::gk3;
        break;
      case 1:
        out.growth_case = GrowthCase::Case2_linear_fibration;
        out.geometric = Geometric::no;
        out.gk = GkVerdict::gk4;
        break;
      default:
        out.growth_case = GrowthCase::Case3_quadratic;
        out.geometric = Geometric::yes;
        out.gk = GkVerdict::gk5;
        break;
    }
  } else {
    out.growth_case = GrowthCase::Case4_exponential;
    out.geometric = Geometric::not_determined;
    out.gk = GkVerdict::exponential;
  }

  out.certificate = "stability: " + stability.describe() +
                    "; rho: " + (rho.one ? std::string("cyclotomic factorization (exact)")
                                         : std::string("pair-product resultant + Sturm isolation")) +
                    "; j: minimal-polynomial annihilation, norm-growth cross-check" +
                    (out.formal ? "; FORMAL: growth data read off P without a stability certificate"
                                : "");
  return out;
}

GrowthData classify(const PullbackMapData& m, bool fibration_flag) {
  return classify(m.p(), m.stability(), fibration_flag);
}

}  // namespace birat

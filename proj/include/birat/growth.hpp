#pragma once

#include <string>
#include <vector>

#include "birat/map_data.hpp"

namespace birat {

enum class GrowthCase { Case1_bounded, Case2_linear_fibration, Case3_quadratic, Case4_exponential };
enum class Geometric { yes, no, not_determined };
enum class GkVerdict { gk3, gk4, gk5, exponential };

std::string to_string(GrowthCase c);
std::string to_string(Geometric g);
std::string to_string(GkVerdict v);

// Spectral radius of an integer matrix, decided exactly: rho = 1 iff every
// nonzero eigenvalue is a root of unity (Kronecker); otherwise rho > 1 and
// rho^2 is pinned down as the largest real root of the root-product
// resultant, isolated by Sturm bisection.
struct SpectralRadius {
  IPoly factor;   // squarefree factor of char_poly carrying a modulus-rho root
  Rat lo, hi;     // lo <= rho <= hi, width <= 1e-12
  bool exact = false;  // rho rational; lo == hi
  bool one = false;    // rho == 1 exactly

  // rho^2 data used for exact modulus-rho membership tests (rho > 1 only).
  IPoly products;      // squarefree poly whose roots are all eigenvalue pair products
  Rat sq_lo, sq_hi;    // isolating interval for rho^2 among roots of `products`
  bool sq_exact = false;

  double approx() const;
};

SpectralRadius spectral_radius(const IMat& p);

// True iff the squarefree factor g (assumed to divide the characteristic
// polynomial rho was computed from) has a root of modulus rho.
bool factor_has_modulus_rho_root(const IPoly& g, const SpectralRadius& rho);

// Max-abs-entry norms ||P^n|| for n = 1..n_max.
std::vector<Int> norm_growth(const IMat& p, int n_max);

// j such that ||P^n|| ~ n^j rho^n: j+1 is the largest exponent, over the
// squarefree factors of char_poly with a modulus-rho root, of that factor in
// the minimal polynomial (found by annihilation tests). Cross-checked against
// the norm-growth slope over n in [20, 60]; disagreement throws.
int jordan_index(const IMat& p, const SpectralRadius& rho);

// Exact ratios (P^{n+1}E.E)/(P^nE.E) for n = 0..n_max-1; the ratios converge
// to rho. Requires (E.E) > 0, E nef against the known curves, and a stability
// certificate covering iteration.
std::vector<Rat> power_iteration_rho(const PolarizedLattice& l, const PullbackMapData& m,
                                     const DivisorClass& ample, int n_max);

struct GrowthData {
  IPoly rho_minpoly;
  Rat rho_lo, rho_hi;
  bool rho_exact = false;
  int j = 0;
  GrowthCase growth_case = GrowthCase::Case1_bounded;
  Geometric geometric = Geometric::not_determined;
  GkVerdict gk = GkVerdict::gk3;
  bool formal = false;          // stability not certified: (rho, j) read off P formally
  bool fibration_flag = false;  // caller-supplied fibration data (recorded only)
  std::string certificate;

  std::string rho_string() const;  // decimal approximation + minimal-polynomial factor
};

// Full classification: (rho, j), the four-case split (rho=1, j in {0,1,2} or
// rho>1), geometricity, and the GK verdict. Rejects rho = 1 with j >= 3 and
// rho < 1 as inconsistent input.
GrowthData classify(const IMat& p, const StabilityCertificate& stability,
                    bool fibration_flag = false);
GrowthData classify(const PullbackMapData& m, bool fibration_flag = false);

}  // namespace birat

#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace birat {

using Int = mpz_class;
using Rat = mpq_class;

// Dense univariate polynomials, coefficients low degree first, no trailing
// zeros (the zero polynomial is the empty vector).
using IPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;

// --- basic arithmetic -------------------------------------------------------

void ipoly_trim(IPoly& p);
void qpoly_trim(QPoly& p);

inline bool ipoly_is_zero(const IPoly& p) { return p.empty(); }
inline int ipoly_deg(const IPoly& p) { return static_cast<int>(p.size()) - 1; }
inline int qpoly_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

IPoly ipoly_add(const IPoly& a, const IPoly& b);
IPoly ipoly_sub(const IPoly& a, const IPoly& b);
IPoly ipoly_mul(const IPoly& a, const IPoly& b);
IPoly ipoly_pow(const IPoly& a, unsigned long e);
IPoly ipoly_derivative(const IPoly& a);
Int ipoly_eval(const IPoly& a, const Int& x);
Rat ipoly_eval_q(const IPoly& a, const Rat& x);

QPoly qpoly_add(const QPoly& a, const QPoly& b);
QPoly qpoly_sub(const QPoly& a, const QPoly& b);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_derivative(const QPoly& a);
Rat qpoly_eval(const QPoly& a, const Rat& x);

QPoly ipoly_to_q(const IPoly& a);
// Clears denominators and divides by integer content; sign of leading
// coefficient is preserved.
IPoly qpoly_to_primitive_i(const QPoly& a);

// Euclidean division over the rationals: a = q*b + r, deg r < deg b.
void qpoly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);

// Exact division; throws DataError if the remainder is nonzero.
IPoly ipoly_div_exact(const IPoly& a, const IPoly& b);

// gcd with positive leading coefficient, primitive over the integers.
IPoly ipoly_gcd(const IPoly& a, const IPoly& b);

Int ipoly_content(const IPoly& a);
IPoly ipoly_primitive(const IPoly& a);

// Resultant over the rationals (Euclidean recursion).
Rat qpoly_resultant(const QPoly& a, const QPoly& b);

std::string ipoly_to_string(const IPoly& p, const std::string& var = "x");

// Fixed-point decimal rendering, truncated toward zero.
std::string rat_to_decimal(const Rat& x, int digits);

// --- structure --------------------------------------------------------------

// Squarefree part (radical), primitive with positive leading coefficient.
IPoly ipoly_squarefree_part(const IPoly& a);

// Yun squarefree decomposition: list of (g_k, k) with a = c * prod g_k^k,
// each g_k squarefree, pairwise coprime, deg g_k >= 1.
std::vector<std::pair<IPoly, int>> ipoly_squarefree_decomposition(const IPoly& a);

// Removes every cyclotomic factor (with multiplicity); a root-of-unity-free
// quotient of the input. Trailing x factors are untouched.
IPoly ipoly_remove_cyclotomic(const IPoly& a);

// True iff every root of `a` is zero or a root of unity.
bool ipoly_all_roots_on_unit_circle_or_zero(const IPoly& a);

// --- real root machinery (Sturm) --------------------------------------------

// Number of distinct real roots of the squarefree polynomial p in (a, b].
int sturm_count_roots(const IPoly& p, const Rat& a, const Rat& b);

// Cauchy bound: all complex roots have modulus < bound.
Rat ipoly_root_bound(const IPoly& p);

struct RootInterval {
  Rat lo, hi;     // lo < root <= hi, or lo == hi when exact
  bool exact = false;
};

// Isolates the largest real root of the squarefree polynomial p in (lower,
// +inf); returns false when there is none. Interval width <= target_width.
bool isolate_max_real_root(const IPoly& p, const Rat& lower, const Rat& target_width,
                           RootInterval& out);

// Polynomial with roots { z_i * z_j : i,j roots of p } (computed as
// Res_x(p(x), x^d p(y/x)) by interpolation), returned squarefree/primitive.
// Requires p(0) != 0.
IPoly ipoly_root_products(const IPoly& p);

}  // namespace birat

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "birat/poly.hpp"

namespace birat {

// Sparse polynomial over Q, degree -> nonzero coefficient. Sparseness is
// load-bearing: the doubling family reaches degree 2^14 with only two terms
// per factor.
using SPoly = std::map<long, Rat>;

bool spoly_is_zero(const SPoly& p);
long spoly_deg(const SPoly& p);  // -1 for zero
SPoly spoly_add(const SPoly& a, const SPoly& b);
SPoly spoly_scale(const SPoly& a, const Rat& c);
SPoly spoly_mul(const SPoly& a, const SPoly& b);
SPoly spoly_from_dense(const QPoly& p);
QPoly spoly_to_dense(const SPoly& p);
std::string spoly_to_string(const SPoly& p, const std::string& var = "t");

// Monic gcd over Q.
SPoly spoly_gcd(const SPoly& a, const SPoly& b);

// Element of Q(t) in lowest terms with monic denominator.
struct RationalFunction {
  SPoly num, den;
};

RationalFunction make_rational_function(SPoly num, SPoly den);
RationalFunction rf_from_poly(SPoly p);

// Finite-dimensional subspace of Q(t); basis independence is verified on
// construction by exact echelon reduction after clearing denominators.
struct RationalSubspace {
  std::vector<RationalFunction> basis;
  bool normalized = false;

  size_t dim() const { return basis.size(); }
};

RationalSubspace make_subspace(std::vector<RationalFunction> basis);
RationalSubspace subspace_from_polys(std::vector<SPoly> polys);

// Clears the common denominator and divides by the polynomial gcd of the
// numerators; the result is a polynomial basis with gcd 1. Dimension and
// sheaf degree are unchanged.
RationalSubspace normalize(const RationalSubspace& v);

// Degree of the invertible sheaf generated by V on P^1: the maximum basis
// degree after normalization.
long sheaf_degree(const RationalSubspace& v);

// Span of all pairwise products, reduced to an independent basis.
RationalSubspace product(const RationalSubspace& v, const RationalSubspace& w);

struct ProductGrowth {
  std::vector<long> e;            // e[n] = dim W_n for n = 1..n_max, W_n = V_0...V_{n-1}
  std::vector<long> w_deg;        // sheaf degree of W_n
  std::vector<long> d;            // d[n] = sheaf degree of V_n, n = 0..n_max-1
  std::vector<long> m;            // m[n] = largest m with deg W_m < d_n (0 if none), n = 1..n_max-1
  struct Violation {
    long n;
    std::string detail;
  };
  std::vector<Violation> violations;  // failures of e_{n+1} >= e_n + e_{m(n)}
  long precondition_from = -1;        // first n where dim V_n >= 2 and d_n > 0 hold onward
};

// Exact dimensions/degrees of the partial products, the thresholds m(n), and
// the recurrence check e_{n+1} >= e_n + e_{m(n)} wherever dim V_n >= 2 and
// d_n > 0. Violations are reported with a witness, never ignored.
ProductGrowth product_growth(const std::vector<RationalSubspace>& spaces, size_t n_max);

struct RecurrenceBound {
  std::vector<double> log_f;   // log f(n), n = 1..n_max (log-space to avoid overflow)
  double fitted_exponent = 0;  // least-squares slope of log f against log n over the tail
  double fitted_rate = 1;      // exp(least-squares slope of log f against n over the tail)
};

// Extremal sequence f(n+1) = f(n) + f(m(n)) with f(1) = f0; m_rule must map
// [1, n] into [1, n].
RecurrenceBound recurrence_lower_bound(double f0, const std::function<long(long)>& m_rule,
                                       long n_max);

// The catalog's three families: V_i = span{1, t}; V_i = span{1, t^(2^i)};
// V_i = span{1, t, ..., t^(i+1)}.
RationalSubspace family_constant(size_t i);
RationalSubspace family_doubling(size_t i);
RationalSubspace family_growing(size_t i);

// Small-height search for f in V with f(s) != 0 for every s in the finite
// set; returns the witness or reports failure at the height cap.
struct GenericElementResult {
  bool found = false;
  SPoly witness;  // in the normalized polynomial model of V
  long height_cap = 100;
};
GenericElementResult find_generic_element(const RationalSubspace& v, const std::vector<Rat>& avoid);

}  // namespace birat

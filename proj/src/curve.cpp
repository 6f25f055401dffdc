#include "birat/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "birat/errors.hpp"

namespace birat {

namespace {

void spoly_prune(SPoly& p) {
  for (auto it = p.begin(); it != p.end();)
    it = (it->second == 0) ? p.erase(it) : std::next(it);
}

Rat spoly_eval(const SPoly& p, const Rat& x) {
  // Horner over the sparse support, highest degree first.
  Rat acc = 0;
  long prev = -1;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    if (prev >= 0)
      for (long k = 0; k < prev - it->first; ++k) acc *= x;
    acc += it->second;
    prev = it->first;
  }
  if (prev > 0)
    for (long k = 0; k < prev; ++k) acc *= x;
  return acc;
}

SPoly spoly_div_exact_(const SPoly& a, const SPoly& b) {
  QPoly q, r;
  qpoly_divmod(spoly_to_dense(a), spoly_to_dense(b), q, r);
  if (!r.empty()) throw DataError("inexact polynomial division in curve oracle");
  return spoly_from_dense(q);
}

SPoly spoly_monomial(long deg, const Rat& c = Rat(1)) {
  SPoly p;
  if (c != 0) p[deg] = c;
  return p;
}

// Row echelon over Q(t)-free polynomial vectors keyed by leading degree;
// insertion is O(#terms) for monomial families, which is what keeps the
// doubling family (dimension 2^14) tractable.
struct Echelon {
  std::map<long, SPoly> pivots;  // leading degree -> monic-leading polynomial

  bool insert(SPoly p) {
    spoly_prune(p);
    while (!p.empty()) {
      long ld = p.rbegin()->first;
      auto it = pivots.find(ld);
      if (it == pivots.end()) {
        Rat inv = 1 / p.rbegin()->second;
        for (auto& [d, c] : p) c *= inv;
        pivots.emplace(ld, std::move(p));
        return true;
      }
      Rat c = p.rbegin()->second;
      SPoly reduced = spoly_add(p, spoly_scale(it->second, -c));
      p = std::move(reduced);
    }
    return false;
  }

  long max_degree() const { return pivots.empty() ? -1 : pivots.rbegin()->first; }

  // Degree of the generated sheaf: max degree minus the degree of the common
  // polynomial factor. A degree-0 pivot makes the gcd constant immediately.
  long sheaf_degree() const {
    if (pivots.empty()) throw DataError("sheaf degree of the zero space");
    if (pivots.begin()->first == 0) return max_degree();
    SPoly g;
    for (const auto& [ld, p] : pivots) {
      g = g.empty() ? p : spoly_gcd(g, p);
      if (spoly_deg(g) == 0) return max_degree();
    }
    return max_degree() - spoly_deg(g);
  }
};

SPoly spoly_lcm(const SPoly& a, const SPoly& b) {
  return spoly_div_exact_(spoly_mul(a, b), spoly_gcd(a, b));
}

// Clears denominators across the whole basis: returns the polynomials
// num_i * (D / den_i) for D = lcm of the denominators.
std::vector<SPoly> cleared_numerators(const std::vector<RationalFunction>& basis) {
  SPoly d = spoly_monomial(0);
  for (const auto& f : basis) d = spoly_lcm(d, f.den);
  std::vector<SPoly> out;
  out.reserve(basis.size());
  for (const auto& f : basis) out.push_back(spoly_mul(f.num, spoly_div_exact_(d, f.den)));
  return out;
}

double logadd(double a, double b) {
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

bool spoly_is_zero(const SPoly& p) { return p.empty(); }

long spoly_deg(const SPoly& p) { return p.empty() ? -1 : p.rbegin()->first; }

SPoly spoly_add(const SPoly& a, const SPoly& b) {
  SPoly r = a;
  for (const auto& [d, c] : b) {
    auto [it, fresh] = r.try_emplace(d, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

SPoly spoly_scale(const SPoly& a, const Rat& c) {
  SPoly r;
  if (c == 0) return r;
  for (const auto& [d, x] : a) r[d] = x * c;
  return r;
}

SPoly spoly_mul(const SPoly& a, const SPoly& b) {
  SPoly r;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) {
      auto [it, fresh] = r.try_emplace(da + db, ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  spoly_prune(r);
  return r;
}

SPoly spoly_from_dense(const QPoly& p) {
  SPoly r;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) r[static_cast<long>(i)] = p[i];
  return r;
}

QPoly spoly_to_dense(const SPoly& p) {
  QPoly r(static_cast<size_t>(spoly_deg(p) + 1), Rat(0));
  for (const auto& [d, c] : p) r[static_cast<size_t>(d)] = c;
  return r;
}

std::string spoly_to_string(const SPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    Rat c = it->second;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rat ac = abs(c);
    if (it->first == 0 || ac != 1) os << ac.get_str();
    if (it->first > 0) {
      if (ac != 1) os << "*";
      os << var;
      if (it->first > 1) os << "^" << it->first;
    }
    first = false;
  }
  return os.str();
}

SPoly spoly_gcd(const SPoly& a, const SPoly& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  IPoly ga = qpoly_to_primitive_i(spoly_to_dense(a));
  IPoly gb = qpoly_to_primitive_i(spoly_to_dense(b));
  IPoly g = ipoly_gcd(ga, gb);
  SPoly r = spoly_from_dense(ipoly_to_q(g));
  if (!r.empty()) {
    Rat inv = 1 / r.rbegin()->second;
    for (auto& [d, c] : r) c *= inv;
  }
  return r;
}

RationalFunction make_rational_function(SPoly num, SPoly den) {
  spoly_prune(num);
  spoly_prune(den);
  if (den.empty()) throw DataError("rational function with zero denominator");
  if (num.empty()) return RationalFunction{SPoly{}, spoly_monomial(0)};
  SPoly g = spoly_gcd(num, den);
  if (spoly_deg(g) > 0) {
    num = spoly_div_exact_(num, g);
    den = spoly_div_exact_(den, g);
  }
  Rat inv = 1 / den.rbegin()->second;
  for (auto& [d, c] : den) c *= inv;
  for (auto& [d, c] : num) c *= inv;
  return RationalFunction{std::move(num), std::move(den)};
}

RationalFunction rf_from_poly(SPoly p) {
  return make_rational_function(std::move(p), spoly_monomial(0));
}

RationalSubspace make_subspace(std::vector<RationalFunction> basis) {
  if (basis.empty()) throw DataError("subspace needs a nonempty basis");
  Echelon ech;
  for (const auto& p : cleared_numerators(basis))
    if (!ech.insert(p)) throw DataError("subspace basis is linearly dependent");
  return RationalSubspace{std::move(basis), false};
}

RationalSubspace subspace_from_polys(std::vector<SPoly> polys) {
  std::vector<RationalFunction> basis;
  basis.reserve(polys.size());
  for (auto& p : polys) basis.push_back(rf_from_poly(std::move(p)));
  return make_subspace(std::move(basis));
}

RationalSubspace normalize(const RationalSubspace& v) {
  if (v.basis.empty()) throw DataError("cannot normalize the zero space");
  std::vector<SPoly> polys = cleared_numerators(v.basis);
  SPoly g;
  for (const auto& p : polys) {
    g = g.empty() ? p : spoly_gcd(g, p);
    if (spoly_deg(g) == 0) break;
  }
  if (spoly_deg(g) > 0)
    for (auto& p : polys) p = spoly_div_exact_(p, g);
  // Scale to integer coefficients with overall content 1.
  Int den_lcm = 1, num_gcd = 0;
  for (const auto& p : polys)
    for (const auto& [d, c] : p)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& p : polys)
    for (const auto& [d, c] : p) {
      Int scaled = c.get_num() * (den_lcm / c.get_den());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
  Rat scale = (num_gcd == 0) ? Rat(1) : Rat(den_lcm) / Rat(num_gcd);
  RationalSubspace out;
  out.normalized = true;
  for (auto& p : polys) out.basis.push_back(rf_from_poly(spoly_scale(p, scale)));
  return out;
}

long sheaf_degree(const RationalSubspace& v) {
  RationalSubspace n = v.normalized ? v : normalize(v);
  long d = 0;
  for (const auto& f : n.basis) d = std::max(d, spoly_deg(f.num));
  return d;
}

RationalSubspace product(const RationalSubspace& v, const RationalSubspace& w) {
  std::vector<RationalFunction> prods;
  prods.reserve(v.basis.size() * w.basis.size());
  for (const auto& a : v.basis)
    for (const auto& b : w.basis)
      prods.push_back(make_rational_function(spoly_mul(a.num, b.num), spoly_mul(a.den, b.den)));

  SPoly d = spoly_monomial(0);
  for (const auto& f : prods) d = spoly_lcm(d, f.den);
  Echelon ech;
  for (const auto& f : prods) ech.insert(spoly_mul(f.num, spoly_div_exact_(d, f.den)));

  RationalSubspace out;
  for (const auto& [ld, p] : ech.pivots)
    out.basis.push_back(make_rational_function(p, d));
  return out;
}

ProductGrowth product_growth(const std::vector<RationalSubspace>& spaces, size_t n_max) {
  if (n_max < 1 || spaces.size() < n_max)
    throw DataError("product growth needs at least n_max factor spaces");

  std::vector<RationalSubspace> vs;
  vs.reserve(n_max);
  for (size_t i = 0; i < n_max; ++i) vs.push_back(normalize(spaces[i]));

  ProductGrowth out;
  for (const auto& v : vs) out.d.push_back(sheaf_degree(v));

  Echelon w;
  for (size_t n = 0; n < n_max; ++n) {
    if (n == 0) {
      for (const auto& f : vs[0].basis) w.insert(f.num);
    } else {
      Echelon next;
      for (const auto& [ld, p] : w.pivots)
        for (const auto& f : vs[n].basis) next.insert(spoly_mul(p, f.num));
      w = std::move(next);
    }
    out.e.push_back(static_cast<long>(w.pivots.size()));
    out.w_deg.push_back(w.sheaf_degree());
  }

  for (size_t n = 1; n < n_max; ++n) {
    // m(n): largest m with deg W_m < d_n (1-based; 0 when no such m).
    long mn = 0;
    for (size_t k = n; k-- > 0;)
      if (out.w_deg[k] < out.d[n]) {
        mn = static_cast<long>(k + 1);
        break;
      }
    out.m.push_back(mn);
    bool preconditions = vs[n].dim() >= 2 && out.d[n] > 0 && mn >= 1;
    if (preconditions && out.precondition_from < 0) out.precondition_from = static_cast<long>(n);
    if (preconditions && out.e[n] < out.e[n - 1] + out.e[static_cast<size_t>(mn - 1)])
      out.violations.push_back({static_cast<long>(n),
                                "e_" + std::to_string(n + 1) + " = " + std::to_string(out.e[n]) +
                                    " < " + std::to_string(out.e[n - 1]) + " + " +
                                    std::to_string(out.e[static_cast<size_t>(mn - 1)])});
  }
  return out;
}

RecurrenceBound recurrence_lower_bound(double f0, const std::function<long(long)>& m_rule,
                                       long n_max) {
  if (f0 <= 0 || n_max < 2) throw DataError("recurrence needs f0 > 0 and n_max >= 2");
  RecurrenceBound out;
  out.log_f.resize(static_cast<size_t>(n_max));
  out.log_f[0] = std::log(f0);
  for (long n = 1; n < n_max; ++n) {
    long m = m_rule(n);
    if (m < 1 || m > n)
      throw DataError("m(" + std::to_string(n) + ") = " + std::to_string(m) + " out of [1, n]");
    out.log_f[static_cast<size_t>(n)] =
        logadd(out.log_f[static_cast<size_t>(n - 1)], out.log_f[static_cast<size_t>(m - 1)]);
  }
  std::vector<double> ns, lns, ys;
  for (long n = std::max(2L, n_max / 2); n <= n_max; ++n) {
    ns.push_back(static_cast<double>(n));
    lns.push_back(std::log(static_cast<double>(n)));
    ys.push_back(out.log_f[static_cast<size_t>(n - 1)]);
  }
  out.fitted_exponent = ls_slope(lns, ys);
  out.fitted_rate = std::exp(ls_slope(ns, ys));
  return out;
}

RationalSubspace family_constant(size_t) {
  return subspace_from_polys({spoly_monomial(0), spoly_monomial(1)});
}

RationalSubspace family_doubling(size_t i) {
  if (i > 40) throw ResourceError("doubling family index exceeds the degree budget");
  return subspace_from_polys({spoly_monomial(0), spoly_monomial(1L << i)});
}

RationalSubspace family_growing(size_t i) {
  std::vector<SPoly> polys;
  for (long k = 0; k <= static_cast<long>(i) + 1; ++k) polys.push_back(spoly_monomial(k));
  return subspace_from_polys(std::move(polys));
}

GenericElementResult find_generic_element(const RationalSubspace& v,
                                          const std::vector<Rat>& avoid) {
  RationalSubspace n = v.normalized ? v : normalize(v);
  GenericElementResult out;
  // Candidates f_k = sum_i k^i b_i; a Vandermonde argument makes some small k
  // work unless every element of V vanishes somewhere on the avoid set.
  for (long k = 1; k <= out.height_cap; ++k) {
    SPoly f;
    Rat kp = 1;
    for (const auto& b : n.basis) {
      f = spoly_add(f, spoly_scale(b.num, kp));
      kp *= k;
    }
    bool ok = !f.empty();
    for (const auto& s : avoid)
      if (ok && spoly_eval(f, s) == 0) ok = false;
    if (ok) {
      out.found = true;
      out.witness = std::move(f);
      return out;
    }
  }
  return out;
}

}  // namespace birat

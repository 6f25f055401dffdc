#include "birat/cremona.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "birat/errors.hpp"

namespace birat {

namespace {

// --- bivariate helpers for the gcd (polynomials in Q[y][x]) -----------------

using BiPoly = std::vector<QPoly>;  // index = x-degree, entry = coefficient in y

void bp_trim(BiPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

bool bp_is_zero(const BiPoly& p) { return p.empty(); }

QPoly qpoly_gcd(const QPoly& a, const QPoly& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  IPoly g = ipoly_gcd(qpoly_to_primitive_i(a), qpoly_to_primitive_i(b));
  QPoly r = ipoly_to_q(g);
  Rat inv = 1 / r.back();
  for (auto& c : r) c *= inv;
  return r;
}

QPoly qpoly_div_exact_(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  qpoly_divmod(a, b, q, r);
  if (!r.empty()) throw DataError("inexact coefficient division in bivariate gcd");
  return q;
}

QPoly bp_content(const BiPoly& p) {
  QPoly c;
  for (const auto& coeff : p) {
    if (coeff.empty()) continue;
    c = qpoly_gcd(c, coeff);
    if (qpoly_deg(c) == 0) break;
  }
  return c;
}

BiPoly bp_divide_content(const BiPoly& p, const QPoly& c) {
  if (qpoly_deg(c) == 0) {
    BiPoly r = p;
    for (auto& coeff : r)
      for (auto& x : coeff) x /= c[0];
    return r;
  }
  BiPoly r;
  r.reserve(p.size());
  for (const auto& coeff : p) r.push_back(coeff.empty() ? QPoly{} : qpoly_div_exact_(coeff, c));
  return r;
}

BiPoly bp_primitive(const BiPoly& p) {
  if (bp_is_zero(p)) return p;
  return bp_divide_content(p, bp_content(p));
}

// Pseudo-remainder of a by b in x: lc(b)^(da-db+1) * a mod b.
BiPoly bp_prem(BiPoly a, const BiPoly& b) {
  long db = static_cast<long>(b.size()) - 1;
  const QPoly& lb = b.back();
  while (static_cast<long>(a.size()) - 1 >= db && !bp_is_zero(a)) {
    long da = static_cast<long>(a.size()) - 1;
    QPoly la = a.back();
    // a = lb*a - la*x^(da-db)*b
    BiPoly next(a.size());
    for (size_t i = 0; i + 1 < a.size(); ++i) next[i] = qpoly_mul(a[i], lb);
    for (long i = 0; i <= db - 1; ++i) {
      size_t idx = static_cast<size_t>(da - db + i);
      next[idx] = qpoly_sub(next[idx], qpoly_mul(la, b[static_cast<size_t>(i)]));
    }
    next.resize(static_cast<size_t>(da));
    bp_trim(next);
    a = std::move(next);
  }
  return a;
}

BiPoly bp_gcd(BiPoly a, BiPoly b) {
  bp_trim(a);
  bp_trim(b);
  if (bp_is_zero(a)) return b;
  if (bp_is_zero(b)) return a;
  QPoly cg = qpoly_gcd(bp_content(a), bp_content(b));
  BiPoly f = bp_primitive(a), g = bp_primitive(b);
  if (f.size() < g.size()) std::swap(f, g);
  while (!bp_is_zero(g) && g.size() > 1) {
    BiPoly r = bp_prem(f, g);
    f = std::move(g);
    g = bp_primitive(r);
  }
  BiPoly prim = bp_is_zero(g) ? f : BiPoly{QPoly{Rat(1)}};
  // Reattach the y-content gcd.
  BiPoly out;
  out.reserve(prim.size());
  for (const auto& coeff : prim) out.push_back(coeff.empty() ? QPoly{} : qpoly_mul(coeff, cg));
  return out;
}

// --- homogeneous <-> bivariate conversions ----------------------------------

long z_content(const TriPoly& p) {
  long k = -1;
  for (const auto& [e, c] : p.terms()) k = (k < 0) ? e[2] : std::min(k, e[2]);
  return std::max(k, 0L);
}

BiPoly dehomogenize(const TriPoly& p) {
  BiPoly out;
  for (const auto& [e, c] : p.terms()) {
    size_t dx = static_cast<size_t>(e[0]);
    if (out.size() <= dx) out.resize(dx + 1);
    QPoly& coeff = out[dx];
    size_t dy = static_cast<size_t>(e[1]);
    if (coeff.size() <= dy) coeff.resize(dy + 1, Rat(0));
    coeff[dy] += c;
  }
  for (auto& coeff : out) qpoly_trim(coeff);
  bp_trim(out);
  return out;
}

TriPoly homogenize(const BiPoly& p, long extra_z = 0) {
  long total = -1;
  for (size_t dx = 0; dx < p.size(); ++dx)
    for (size_t dy = 0; dy < p[dx].size(); ++dy)
      if (p[dx][dy] != 0) total = std::max(total, static_cast<long>(dx + dy));
  TriPoly::Terms terms;
  for (size_t dx = 0; dx < p.size(); ++dx)
    for (size_t dy = 0; dy < p[dx].size(); ++dy)
      if (p[dx][dy] != 0)
        terms[{static_cast<long>(dx), static_cast<long>(dy),
               total - static_cast<long>(dx + dy) + extra_z}] = p[dx][dy];
  return TriPoly(std::move(terms));
}

Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// --- parser -----------------------------------------------------------------

struct Parser {
  const std::string& s;
  size_t i = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool peek(char c) {
    skip();
    return i < s.size() && s[i] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++i;
    return true;
  }

  TriPoly expr() {
    TriPoly r = eat('-') ? tp_scale(term(), Rat(-1)) : term();
    while (true) {
      if (eat('+'))
        r = tp_add(r, term());
      else if (eat('-'))
        r = tp_sub(r, term());
      else
        return r;
    }
  }

  TriPoly term() {
    TriPoly r = factor();
    while (eat('*')) r = tp_mul(r, factor());
    return r;
  }

  TriPoly factor() {
    TriPoly b = base();
    if (eat('^')) {
      long e = integer();
      if (e < 0) throw DataError("negative exponent in polynomial");
      TriPoly r = TriPoly::monomial(0, 0, 0);
      for (long k = 0; k < e; ++k) r = tp_mul(r, b);
      return r;
    }
    return b;
  }

  TriPoly base() {
    skip();
    if (eat('(')) {
      TriPoly r = expr();
      if (!eat(')')) throw DataError("unbalanced parenthesis in polynomial '" + s + "'");
      return r;
    }
    if (i < s.size() && (s[i] == 'x' || s[i] == 'y' || s[i] == 'z')) {
      char v = s[i++];
      return TriPoly::monomial(v == 'x', v == 'y', v == 'z');
    }
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      Int num(std::to_string(integer()));
      if (eat('/')) {
        Int den(std::to_string(integer()));
        if (den == 0) throw DataError("zero denominator in polynomial '" + s + "'");
        return TriPoly::monomial(0, 0, 0, Rat(num) / Rat(den));
      }
      return TriPoly::monomial(0, 0, 0, Rat(num));
    }
    throw DataError("parse error in polynomial '" + s + "' at position " + std::to_string(i));
  }

  long integer() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw DataError("expected integer in polynomial '" + s + "'");
    return std::stol(s.substr(start, i - start));
  }
};

}  // namespace

// --- TriPoly ----------------------------------------------------------------

TriPoly::TriPoly(Terms terms) {
  for (auto it = terms.begin(); it != terms.end();)
    it = (it->second == 0) ? terms.erase(it) : std::next(it);
  for (const auto& [e, c] : terms) {
    long d = e[0] + e[1] + e[2];
    if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw DataError("negative exponent in polynomial");
    if (degree_ < 0)
      degree_ = d;
    else if (d != degree_)
      throw DataError("polynomial is not homogeneous");
  }
  terms_ = std::move(terms);
}

TriPoly TriPoly::monomial(long ex, long ey, long ez, const Rat& c) {
  Terms t;
  if (c != 0) t[{ex, ey, ez}] = c;
  return TriPoly(std::move(t));
}

TriPoly TriPoly::parse(const std::string& text) {
  Parser p(text);
  TriPoly r = p.expr();
  p.skip();
  if (p.i != text.size()) throw DataError("trailing input in polynomial '" + text + "'");
  return r;
}

Rat TriPoly::eval(const Rat& x, const Rat& y, const Rat& z) const {
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (long k = 0; k < e[0]; ++k) t *= x;
    for (long k = 0; k < e[1]; ++k) t *= y;
    for (long k = 0; k < e[2]; ++k) t *= z;
    acc += t;
  }
  return acc;
}

TriPoly TriPoly::derivative(int var) const {
  Terms t;
  for (const auto& [e, c] : terms_) {
    if (e[static_cast<size_t>(var)] == 0) continue;
    auto ne = e;
    --ne[static_cast<size_t>(var)];
    t[ne] = c * e[static_cast<size_t>(var)];
  }
  return TriPoly(std::move(t));
}

std::string TriPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rat ac = abs(c);
    bool has_var = e[0] + e[1] + e[2] > 0;
    if (!has_var || ac != 1) os << ac.get_str();
    const char* names = "xyz";
    bool started = !has_var || ac != 1;
    for (int v = 0; v < 3; ++v) {
      if (e[static_cast<size_t>(v)] == 0) continue;
      if (started) os << "*";
      os << names[v];
      if (e[static_cast<size_t>(v)] > 1) os << "^" << e[static_cast<size_t>(v)];
      started = true;
    }
    first = false;
  }
  return os.str();
}

size_t TriPoly::max_coeff_digits() const {
  size_t d = 0;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, mpz_sizeinbase(c.get_num().get_mpz_t(), 10));
    d = std::max(d, mpz_sizeinbase(c.get_den().get_mpz_t(), 10));
  }
  return d;
}

TriPoly tp_add(const TriPoly& a, const TriPoly& b) {
  TriPoly::Terms t = a.terms();
  for (const auto& [e, c] : b.terms()) {
    auto [it, fresh] = t.try_emplace(e, c);
    if (!fresh) it->second += c;
  }
  return TriPoly(std::move(t));
}

TriPoly tp_sub(const TriPoly& a, const TriPoly& b) { return tp_add(a, tp_scale(b, Rat(-1))); }

TriPoly tp_mul(const TriPoly& a, const TriPoly& b) {
  TriPoly::Terms t;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      std::array<long, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      auto [it, fresh] = t.try_emplace(e, ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  return TriPoly(std::move(t));
}

TriPoly tp_scale(const TriPoly& a, const Rat& c) {
  TriPoly::Terms t;
  if (c != 0)
    for (const auto& [e, x] : a.terms()) t[e] = x * c;
  return TriPoly(std::move(t));
}

std::optional<TriPoly> tp_div_exact(const TriPoly& a, const TriPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return TriPoly();
  // Exact multivariate division: with any fixed monomial order, an exact
  // quotient always reduces the leading term, so a non-divisible leading
  // term proves non-divisibility.
  TriPoly::Terms rem = a.terms();
  TriPoly::Terms quot;
  const auto& lb = *b.terms().rbegin();
  while (!rem.empty()) {
    const auto& lr = *rem.rbegin();
    std::array<long, 3> e{lr.first[0] - lb.first[0], lr.first[1] - lb.first[1],
                          lr.first[2] - lb.first[2]};
    if (e[0] < 0 || e[1] < 0 || e[2] < 0) return std::nullopt;
    Rat c = lr.second / lb.second;
    quot[e] = c;
    for (const auto& [eb, cb] : b.terms()) {
      std::array<long, 3> et{e[0] + eb[0], e[1] + eb[1], e[2] + eb[2]};
      auto [it, fresh] = rem.try_emplace(et, -c * cb);
      if (!fresh) {
        it->second -= c * cb;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return TriPoly(std::move(quot));
}

TriPoly tp_gcd(const TriPoly& a, const TriPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long za = z_content(a), zb = z_content(b);
  auto a0 = tp_div_exact(a, TriPoly::monomial(0, 0, za));
  auto b0 = tp_div_exact(b, TriPoly::monomial(0, 0, zb));
  BiPoly g = bp_gcd(dehomogenize(*a0), dehomogenize(*b0));
  TriPoly out = homogenize(g, std::min(za, zb));
  if (!out.is_zero()) out = tp_scale(out, 1 / out.terms().rbegin()->second);
  return out;
}

// --- ProjPoint --------------------------------------------------------------

ProjPoint make_proj_point(Int a, Int b, Int cc) {
  if (a == 0 && b == 0 && cc == 0) throw DataError("projective point (0:0:0)");
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), cc.get_mpz_t());
  a /= g;
  b /= g;
  cc /= g;
  Int lead = (a != 0) ? a : (b != 0) ? b : cc;
  if (lead < 0) {
    a = -a;
    b = -b;
    cc = -cc;
  }
  return ProjPoint{{std::move(a), std::move(b), std::move(cc)}};
}

std::string ProjPoint::to_string() const {
  return "(" + c[0].get_str() + ":" + c[1].get_str() + ":" + c[2].get_str() + ")";
}

// --- RationalMapP2 ----------------------------------------------------------

RationalMapP2::RationalMapP2(std::array<TriPoly, 3> forms, std::vector<ProjPoint> fundamental_points,
                             std::vector<ContractedCurve> contracted_curves)
    : forms_(std::move(forms)),
      fundamental_points_(std::move(fundamental_points)),
      contracted_curves_(std::move(contracted_curves)) {
  long d = forms_[0].degree();
  for (const auto& f : forms_)
    if (f.is_zero() || f.degree() != d)
      throw DataError("map forms must be nonzero homogeneous of equal degree");
  TriPoly g = tp_gcd(tp_gcd(forms_[0], forms_[1]), forms_[2]);
  if (g.degree() != 0) throw DataError("map forms share the common factor " + g.to_string());

  for (const auto& p : fundamental_points_)
    for (const auto& f : forms_)
      if (f.eval(Rat(p.c[0]), Rat(p.c[1]), Rat(p.c[2])) != 0)
        throw DataError("listed fundamental point " + p.to_string() + " is not fundamental");

  if (!contracted_curves_.empty()) {
    // Jacobian determinant of the three forms.
    TriPoly jac;
    int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    for (int k = 0; k < 6; ++k) {
      TriPoly t = tp_mul(tp_mul(forms_[0].derivative(perm[k][0]), forms_[1].derivative(perm[k][1])),
                         forms_[2].derivative(perm[k][2]));
      jac = (k < 3) ? tp_add(jac, t) : tp_sub(jac, t);
    }
    for (const auto& cc : contracted_curves_) {
      if (cc.form.is_zero() || cc.form.degree() < 1)
        throw DataError("contracted curve form must be nonconstant");
      if (!tp_divides(cc.form, jac))
        throw DataError("contracted curve " + cc.form.to_string() +
                        " does not divide the Jacobian determinant");
      // Spot check: points on the curve must map to the listed image.
      int verified = 0;
      for (long ax = -9; ax <= 9 && verified < 3; ++ax)
        for (long ay = -9; ay <= 9 && verified < 3; ++ay)
          for (long az = -9; az <= 9 && verified < 3; ++az) {
            if (ax == 0 && ay == 0 && az == 0) continue;
            if (cc.form.eval(Rat(ax), Rat(ay), Rat(az)) != 0) continue;
            ProjPoint p = make_proj_point(Int(ax), Int(ay), Int(az));
            auto img = evaluate(*this, p);
            if (!img) continue;
            if (!(*img == cc.image))
              throw DataError("contracted curve " + cc.form.to_string() + " maps " +
                              p.to_string() + " to " + img->to_string() + ", not " +
                              cc.image.to_string());
            ++verified;
          }
      if (verified < 3)
        throw DataError("could not find 3 small points on contracted curve " +
                        cc.form.to_string() + " for the image check");
    }
  }
}

RationalMapP2 RationalMapP2::identity() {
  return RationalMapP2({TriPoly::monomial(1, 0, 0), TriPoly::monomial(0, 1, 0),
                        TriPoly::monomial(0, 0, 1)});
}

std::optional<ProjPoint> evaluate(const RationalMapP2& m, const ProjPoint& p) {
  std::array<Rat, 3> v;
  bool all_zero = true;
  for (int i = 0; i < 3; ++i) {
    v[static_cast<size_t>(i)] =
        m.forms()[static_cast<size_t>(i)].eval(Rat(p.c[0]), Rat(p.c[1]), Rat(p.c[2]));
    if (v[static_cast<size_t>(i)] != 0) all_zero = false;
  }
  if (all_zero) return std::nullopt;
  Int l = lcm_int(lcm_int(v[0].get_den(), v[1].get_den()), v[2].get_den());
  return make_proj_point(v[0].get_num() * (l / v[0].get_den()),
                         v[1].get_num() * (l / v[1].get_den()),
                         v[2].get_num() * (l / v[2].get_den()));
}

namespace {

TriPoly substitute(const TriPoly& f, const std::array<TriPoly, 3>& g) {
  // Power tables for each inner form.
  std::array<std::vector<TriPoly>, 3> pows;
  for (int v = 0; v < 3; ++v) pows[static_cast<size_t>(v)].push_back(TriPoly::monomial(0, 0, 0));
  TriPoly acc;
  for (const auto& [e, c] : f.terms()) {
    TriPoly t = TriPoly::monomial(0, 0, 0, c);
    for (int v = 0; v < 3; ++v) {
      auto& table = pows[static_cast<size_t>(v)];
      while (static_cast<long>(table.size()) <= e[static_cast<size_t>(v)])
        table.push_back(tp_mul(table.back(), g[static_cast<size_t>(v)]));
      t = tp_mul(t, table[static_cast<size_t>(e[static_cast<size_t>(v)])]);
    }
    acc = tp_add(acc, t);
  }
  return acc;
}

bool is_identity_map(const RationalMapP2& m) {
  if (m.degree() != 1) return false;
  // Forms proportional to (x, y, z) with a common scalar.
  const auto& f = m.forms();
  return tp_sub(tp_mul(f[0], TriPoly::monomial(0, 1, 0)),
                tp_mul(f[1], TriPoly::monomial(1, 0, 0)))
             .is_zero() &&
         tp_sub(tp_mul(f[1], TriPoly::monomial(0, 0, 1)),
                tp_mul(f[2], TriPoly::monomial(0, 1, 0)))
             .is_zero();
}

}  // namespace

RationalMapP2 compose_reduce(const RationalMapP2& m1, const RationalMapP2& m2,
                             const Budget& budget) {
  if (m1.degree() * m2.degree() > budget.max_degree)
    throw ResourceError("composition degree " + std::to_string(m1.degree() * m2.degree()) +
                        " exceeds the budget of " + std::to_string(budget.max_degree));
  std::array<TriPoly, 3> comp;
  for (int i = 0; i < 3; ++i)
    comp[static_cast<size_t>(i)] = substitute(m1.forms()[static_cast<size_t>(i)], m2.forms());
  TriPoly g = tp_gcd(tp_gcd(comp[0], comp[1]), comp[2]);
  if (g.degree() > 0)
    for (auto& f : comp) f = *tp_div_exact(f, g);
  for (const auto& f : comp)
    if (f.max_coeff_digits() > budget.max_coeff_digits)
      throw ResourceError("composition coefficients exceed the digit budget");
  return RationalMapP2(std::move(comp));
}

DegreeSequenceResult degree_sequence(const RationalMapP2& m, long n_max, const Budget& budget) {
  DegreeSequenceResult out;
  RationalMapP2 cur = m;
  for (long n = 1; n <= n_max; ++n) {
    out.degrees.push_back(cur.degree());
    if (n == n_max) break;
    try {
      cur = compose_reduce(m, cur, budget);
    } catch (const ResourceError& e) {
      out.truncated = true;
      out.reason = e.what();
      break;
    }
  }
  return out;
}

StabilityCertificate stability_check(const RationalMapP2& m, const RationalMapP2& m_inv,
                                     long horizon) {
  for (const auto* map : {&m, &m_inv})
    if (map->degree() >= 2 &&
        (map->contracted_curves().empty() || map->fundamental_points().empty()))
      throw CapabilityError(
          "stability check needs contracted-curve and fundamental-point data for both directions");
  if (!is_identity_map(compose_reduce(m, m_inv)))
    throw DataError("supplied inverse does not compose to the identity");

  StabilityCertificate cert;
  auto scan = [&](const RationalMapP2& map, const char* dir) -> bool {
    for (const auto& cc : map.contracted_curves()) {
      ProjPoint q = cc.image;
      for (long n = 1; n <= horizon; ++n) {
        bool fundamental = false;
        for (const auto& fp : map.fundamental_points())
          if (q == fp) fundamental = true;
        std::optional<ProjPoint> next = fundamental ? std::nullopt : evaluate(map, q);
        if (fundamental || !next) {
          cert.kind = StabilityKind::known_unstable;
          cert.witness = std::string(dir) + " curve " + cc.form.to_string() + " reaches the " +
                         (fundamental ? "fundamental" : "undefined") + " point " + q.to_string() +
                         " at n=" + std::to_string(n);
          return false;
        }
        q = *next;
      }
    }
    return true;
  };
  if (scan(m, "forward") && scan(m_inv, "inverse")) {
    cert.kind = StabilityKind::certified_stable;
    cert.horizon = horizon;
    cert.source = "orbit check, both directions, horizon " + std::to_string(horizon);
  } else {
    cert.source = "orbit check";
  }
  return cert;
}

UnbalancedScanResult unbalanced_scan(const RationalMapP2& m, const RationalMapP2& m_inv,
                                     long horizon) {
  UnbalancedScanResult out;
  out.horizon = horizon;
  StabilityCertificate cert = stability_check(m, m_inv, horizon);
  if (cert.kind == StabilityKind::known_unstable) {
    out.reason = "map is not stable at this horizon: " + cert.witness;
    return out;
  }
  out.applicable = true;

  std::vector<ProjPoint> candidates;
  auto add = [&](const ProjPoint& p) {
    for (const auto& q : candidates)
      if (q == p) return;
    candidates.push_back(p);
  };
  for (const auto& cc : m.contracted_curves()) add(cc.image);
  for (const auto& cc : m_inv.contracted_curves()) add(cc.image);

  for (const auto& p : candidates) {
    UnbalancedEvidence ev;
    ev.point = p;
    ProjPoint q = p;
    for (long n = 1; n <= horizon; ++n) {
      auto back = evaluate(m_inv, q);
      if (!back) break;
      q = *back;
      ev.backward_defined = n;
    }
    q = p;
    bool alive = true;
    for (long k = 1; k <= horizon; ++k) {
      if (alive) {
        bool fundamental = false;
        for (const auto& fp : m.fundamental_points())
          if (q == fp) fundamental = true;
        std::optional<ProjPoint> next = fundamental ? std::nullopt : evaluate(m, q);
        if (fundamental || !next)
          alive = false;
        else
          q = *next;
      }
      if (!alive) ++ev.forward_undefined;
    }
    if (ev.backward_defined == horizon && ev.forward_undefined >= (horizon + 1) / 2) {
      ev.detail = "backward orbit defined through n=" + std::to_string(horizon) +
                  ", forward map undefined for " + std::to_string(ev.forward_undefined) + " of " +
                  std::to_string(horizon) + " steps (horizon-bounded evidence, not a proof)";
      out.flagged.push_back(std::move(ev));
    }
  }
  return out;
}

long pullback_number(const RationalMapP2& m) { return m.degree(); }

PullbackMapData pullback_number_data(const RationalMapP2& m, const PolarizedLattice& l,
                                     StabilityCertificate stability) {
  if (l.rank() != 1) throw DataError("pullback bridge expects a rank-1 lattice");
  IMat p(1, 1);
  p.at(0, 0) = m.degree();
  std::optional<IMat> p_inv;
  if (m.degree() == 1) p_inv = IMat::identity(1);
  std::vector<DivisorClass> exceptional;
  for (const auto& cc : m.contracted_curves())
    exceptional.push_back(l.make_class({Int(cc.form.degree())}));
  return PullbackMapData(l, std::move(p), std::move(p_inv), exceptional, exceptional,
                         std::move(stability));
}

}  // namespace birat

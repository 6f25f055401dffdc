#include "birat/poly.hpp"

#include <algorithm>
#include <sstream>

#include "birat/errors.hpp"

namespace birat {

void ipoly_trim(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void qpoly_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IPoly ipoly_add(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  ipoly_trim(r);
  return r;
}

IPoly ipoly_sub(const IPoly& a, const IPoly& b) {
  IPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  ipoly_trim(r);
  return r;
}

IPoly ipoly_mul(const IPoly& a, const IPoly& b) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ipoly_trim(r);
  return r;
}

IPoly ipoly_pow(const IPoly& a, unsigned long e) {
  IPoly r{Int(1)};
  IPoly base = a;
  while (e > 0) {
    if (e & 1UL) r = ipoly_mul(r, base);
    e >>= 1UL;
    if (e) base = ipoly_mul(base, base);
  }
  return r;
}

IPoly ipoly_derivative(const IPoly& a) {
  if (a.size() <= 1) return {};
  IPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Int(static_cast<long>(i));
  ipoly_trim(r);
  return r;
}

Int ipoly_eval(const IPoly& a, const Int& x) {
  Int r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

Rat ipoly_eval_q(const IPoly& a, const Rat& x) {
  Rat r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + Rat(a[i]);
  return r;
}

QPoly qpoly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qpoly_trim(r);
  return r;
}

QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qpoly_trim(r);
  return r;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qpoly_trim(r);
  return r;
}

QPoly qpoly_derivative(const QPoly& a) {
  if (a.size() <= 1) return {};
  QPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rat(static_cast<long>(i));
  qpoly_trim(r);
  return r;
}

Rat qpoly_eval(const QPoly& a, const Rat& x) {
  Rat r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

QPoly ipoly_to_q(const IPoly& a) {
  QPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

IPoly qpoly_to_primitive_i(const QPoly& a) {
  if (a.empty()) return {};
  Int lcm = 1;
  for (const auto& c : a) {
    Int den = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  IPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    Rat scaled = a[i] * Rat(lcm);
    r[i] = scaled.get_num();
  }
  Int content = ipoly_content(r);
  if (content != 0 && content != 1)
    for (auto& c : r) c /= content;
  return r;
}

void qpoly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.empty()) throw DataError("polynomial division by zero");
  r = a;
  q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
  const Rat lead = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    Rat factor = r.back() / lead;
    size_t shift = r.size() - b.size();
    q[shift] = factor;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= factor * b[i];
    qpoly_trim(r);
    if (r.size() < b.size()) break;
  }
  qpoly_trim(q);
}

IPoly ipoly_div_exact(const IPoly& a, const IPoly& b) {
  QPoly q, r;
  qpoly_divmod(ipoly_to_q(a), ipoly_to_q(b), q, r);
  if (!r.empty()) throw DataError("inexact polynomial division");
  IPoly out(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) throw DataError("inexact polynomial division (non-integral quotient)");
    out[i] = q[i].get_num();
  }
  ipoly_trim(out);
  return out;
}

Int ipoly_content(const IPoly& a) {
  Int g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IPoly ipoly_primitive(const IPoly& a) {
  Int c = ipoly_content(a);
  if (c == 0) return {};
  IPoly r = a;
  for (auto& x : r) x /= c;
  if (!r.empty() && r.back() < 0)
    for (auto& x : r) x = -x;
  return r;
}

IPoly ipoly_gcd(const IPoly& a, const IPoly& b) {
  QPoly f = ipoly_to_q(a), g = ipoly_to_q(b);
  while (!g.empty()) {
    QPoly q, r;
    qpoly_divmod(f, g, q, r);
    f = std::move(g);
    g = std::move(r);
  }
  IPoly out = qpoly_to_primitive_i(f);
  if (!out.empty() && out.back() < 0)
    for (auto& x : out) x = -x;
  return out;
}

Rat qpoly_resultant(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return Rat(0);
  int da = qpoly_deg(a), db = qpoly_deg(b);
  if (da == 0 && db == 0) return Rat(1);
  if (db == 0) {
    Rat r = 1;
    for (int i = 0; i < da; ++i) r *= b[0];
    return r;
  }
  if (da < db) {
    Rat sign = ((da * db) % 2 == 0) ? Rat(1) : Rat(-1);
    return sign * qpoly_resultant(b, a);
  }
  QPoly q, r;
  qpoly_divmod(a, b, q, r);
  if (r.empty()) return Rat(0);
  int dr = qpoly_deg(r);
  Rat lead_pow = 1;
  for (int i = 0; i < da - dr; ++i) lead_pow *= b.back();
  Rat sign = ((da * db) % 2 == 0) ? Rat(1) : Rat(-1);
  return sign * lead_pow * qpoly_resultant(b, r);
}

std::string ipoly_to_string(const IPoly& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Int c = p[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int ac = abs(c);
    if (i == 0 || ac != 1) os << ac.get_str();
    if (i > 0) {
      if (ac != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) return "0";
  return os.str();
}

std::string rat_to_decimal(const Rat& x, int digits) {
  Rat a = x;
  std::string sign;
  if (a < 0) {
    sign = "-";
    a = -a;
  }
  Int ip = a.get_num() / a.get_den();
  Rat frac = a - Rat(ip);
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Int fp = (frac.get_num() * scale) / frac.get_den();
  std::string fs = fp.get_str();
  if (static_cast<int>(fs.size()) < digits) fs.insert(0, static_cast<size_t>(digits) - fs.size(), '0');
  return sign + ip.get_str() + "." + fs;
}

IPoly ipoly_squarefree_part(const IPoly& a) {
  if (ipoly_deg(a) < 1) return ipoly_primitive(a);
  IPoly g = ipoly_gcd(a, ipoly_derivative(a));
  return ipoly_primitive(ipoly_div_exact(a, g));
}

std::vector<std::pair<IPoly, int>> ipoly_squarefree_decomposition(const IPoly& a) {
  std::vector<std::pair<IPoly, int>> out;
  IPoly f = ipoly_primitive(a);
  if (ipoly_deg(f) < 1) return out;
  // Yun's algorithm.
  IPoly fp = ipoly_derivative(f);
  IPoly g = ipoly_gcd(f, fp);
  IPoly c = ipoly_div_exact(f, g);
  IPoly d = ipoly_sub(ipoly_div_exact(fp, g), ipoly_derivative(c));
  int k = 1;
  while (ipoly_deg(c) >= 1) {
    IPoly gk = ipoly_gcd(c, d);
    if (ipoly_deg(gk) >= 1) out.emplace_back(gk, k);
    c = ipoly_div_exact(c, gk);
    d = ipoly_sub(ipoly_div_exact(d, gk), ipoly_derivative(c));
    ++k;
  }
  return out;
}

namespace {

// All N with Euler phi(N) <= d; a degree-d polynomial can only contain
// cyclotomic factors of such orders.
std::vector<unsigned long> cyclotomic_order_candidates(int d) {
  std::vector<unsigned long> out;
  unsigned long limit = 2UL * static_cast<unsigned long>(d) * static_cast<unsigned long>(d) + 2;
  for (unsigned long n = 1; n <= limit; ++n) {
    unsigned long phi = n, m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        phi -= phi / p;
        while (m % p == 0) m /= p;
      }
    }
    if (m > 1) phi -= phi / m;
    if (phi <= static_cast<unsigned long>(d)) out.push_back(n);
  }
  return out;
}

IPoly x_pow_minus_one(unsigned long n) {
  IPoly p(n + 1, Int(0));
  p[0] = -1;
  p[n] = 1;
  return p;
}

}  // namespace

IPoly ipoly_remove_cyclotomic(const IPoly& a) {
  IPoly c = ipoly_primitive(a);
  if (ipoly_deg(c) < 1) return c;
  auto orders = cyclotomic_order_candidates(ipoly_deg(c));
  bool changed = true;
  while (changed && ipoly_deg(c) >= 1) {
    changed = false;
    for (unsigned long n : orders) {
      if (ipoly_deg(c) < 1) break;
      IPoly g = ipoly_gcd(c, x_pow_minus_one(n));
      if (ipoly_deg(g) >= 1) {
        c = ipoly_div_exact(c, g);
        changed = true;
      }
    }
  }
  return c;
}

bool ipoly_all_roots_on_unit_circle_or_zero(const IPoly& a) {
  IPoly f = ipoly_primitive(a);
  if (f.empty()) return true;
  size_t k = 0;
  while (k < f.size() && f[k] == 0) ++k;
  IPoly nox(f.begin() + static_cast<long>(k), f.end());
  if (ipoly_deg(nox) < 1) return true;
  IPoly left = ipoly_remove_cyclotomic(nox);
  return ipoly_deg(left) < 1;
}

namespace {

int sign_of(const Rat& x) { return sgn(x); }

// Signs of the Sturm chain evaluated at x; returns the variation count.
int sturm_variations(const std::vector<QPoly>& chain, const Rat& x) {
  int var = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_of(qpoly_eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

std::vector<QPoly> sturm_chain(const IPoly& p) {
  std::vector<QPoly> chain;
  chain.push_back(ipoly_to_q(p));
  chain.push_back(qpoly_derivative(chain[0]));
  while (!chain.back().empty() && qpoly_deg(chain.back()) >= 0) {
    const QPoly& s0 = chain[chain.size() - 2];
    const QPoly& s1 = chain.back();
    if (s1.empty()) break;
    QPoly q, r;
    qpoly_divmod(s0, s1, q, r);
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

}  // namespace

int sturm_count_roots(const IPoly& p, const Rat& a, const Rat& b) {
  if (ipoly_deg(p) < 1) return 0;
  auto chain = sturm_chain(p);
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

Rat ipoly_root_bound(const IPoly& p) {
  if (ipoly_deg(p) < 1) return Rat(1);
  Rat maxr = 0;
  Int lead = abs(p.back());
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    Rat r = Rat(abs(p[i])) / Rat(lead);
    if (r > maxr) maxr = r;
  }
  return maxr + 1;
}

bool isolate_max_real_root(const IPoly& p, const Rat& lower, const Rat& target_width,
                           RootInterval& out) {
  if (ipoly_deg(p) < 1) return false;
  Rat bound = ipoly_root_bound(p);
  Rat lo = lower, hi = bound;
  if (sturm_count_roots(p, lo, hi) == 0) return false;
  // Shrink [lo, hi] keeping the largest root in (lo, hi].
  while (hi - lo > target_width || sturm_count_roots(p, lo, hi) != 1) {
    Rat mid = (lo + hi) / 2;
    if (sturm_count_roots(p, mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  out.lo = lo;
  out.hi = hi;
  out.exact = false;
  // Detect an exact integer root inside the interval.
  Int candidate;
  mpz_cdiv_q(candidate.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
  if (Rat(candidate) > lo && Rat(candidate) <= hi && ipoly_eval(p, candidate) == 0) {
    out.lo = out.hi = Rat(candidate);
    out.exact = true;
  }
  return true;
}

IPoly ipoly_root_products(const IPoly& p) {
  if (ipoly_deg(p) < 1) throw DataError("root-product polynomial needs degree >= 1");
  if (p[0] == 0) throw DataError("root-product polynomial requires nonzero constant term");
  const int d = ipoly_deg(p);
  const int dy = d * d;
  QPoly f = ipoly_to_q(p);
  // Evaluate y -> Res_x(p(x), sum_i a_i y^i x^(d-i)) at dy+1 points, then
  // interpolate (Lagrange over the rationals).
  std::vector<Rat> xs, ys;
  long y0 = 0;
  while (static_cast<int>(xs.size()) < dy + 1) {
    Rat y(y0);
    QPoly h(static_cast<size_t>(d) + 1, Rat(0));
    Rat ypow = 1;
    for (int i = 0; i <= d; ++i) {
      h[static_cast<size_t>(d - i)] = Rat(p[static_cast<size_t>(i)]) * ypow;
      ypow *= y;
    }
    qpoly_trim(h);
    xs.push_back(y);
    ys.push_back(qpoly_resultant(f, h));
    y0 = (y0 > 0) ? -y0 : -y0 + 1;  // 0, 1, -1, 2, -2, ...
  }
  // Newton divided differences.
  size_t n = xs.size();
  std::vector<Rat> coef = ys;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly result{coef[n - 1]};
  for (size_t i = n - 1; i-- > 0;) {
    // result = result * (y - xs[i]) + coef[i]
    QPoly shifted(result.size() + 1, Rat(0));
    for (size_t k = 0; k < result.size(); ++k) {
      shifted[k + 1] += result[k];
      shifted[k] -= result[k] * xs[i];
    }
    shifted[0] += coef[i];
    qpoly_trim(shifted);
    result = std::move(shifted);
  }
  IPoly g = qpoly_to_primitive_i(result);
  return ipoly_squarefree_part(g);
}

}  // namespace birat

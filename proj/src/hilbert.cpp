#include "birat/hilbert.hpp"

#include <cmath>

#include "birat/errors.hpp"

namespace birat {

namespace {

double log_int(const Int& v) {
  signed long e = 0;
  double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

Int parity_checked_rr(const PolarizedLattice& l, const Int& self_int, const Int& k_int) {
  Int num = self_int - k_int;
  if (mpz_even_p(num.get_mpz_t()) == 0)
    throw DataError("adjunction parity violated: (D.D) - (D.K) = " + num.get_str() + " is odd");
  return num / 2 + 1 + l.pa();
}

// Simple least-squares slope of y against x.
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

DivisorClass twisted_sum(const PullbackMapData& m, const DivisorClass& d, long n) {
  if (n < 0) throw DataError("twisted sum needs n >= 0");
  DivisorClass sum = m.lattice().zero_class();
  DivisorClass cur = d;
  for (long i = 0; i < n; ++i) {
    sum = dc_add(sum, cur);
    cur = pullback(m, cur);
  }
  return sum;
}

Int rr_dimension(const PolarizedLattice& l, const DivisorClass& dn) {
  return parity_checked_rr(l, intersect(l, dn, dn), intersect(l, dn, l.canonical()));
}

RecurrenceReport selfint_recurrence_check(const PolarizedLattice& l, const PullbackMapData& m,
                                          const DivisorClass& d, long b_max) {
  RecurrenceReport rep;
  const auto& exc = m.exceptional();
  for (const auto& e : exc) {
    if (pullback(m, e) != e) {
      rep.skip_reason = "hypothesis fails: an exceptional class is not fixed by P";
      return rep;
    }
  }
  for (size_t i = 0; i < exc.size(); ++i)
    for (size_t k = 0; k < exc.size(); ++k)
      if (intersect(l, exc[i], exc[k]) != 0) {
        rep.skip_reason = "hypothesis fails: exceptional classes do not pairwise intersect in 0";
        return rep;
      }
  rep.applicable = true;

  Int n_val = 0;
  for (const auto& e : exc) {
    Int de = intersect(l, d, e);
    n_val += de * de;
  }
  rep.n_value = n_val;

  std::vector<DivisorClass> powers{d};
  for (long k = 1; k <= b_max; ++k) powers.push_back(pullback(m, powers.back()));

  for (long b = 0; b <= b_max; ++b)
    for (long a = 0; a <= b; ++a) {
      Int lhs = intersect(l, powers[static_cast<size_t>(b)], powers[static_cast<size_t>(a)]);
      Int rhs = intersect(l, powers[static_cast<size_t>(b - a)], d) + Int(a) * n_val;
      if (lhs != rhs)
        throw DataError("self-intersection recurrence fails at (a,b)=(" + std::to_string(a) +
                        "," + std::to_string(b) + "): " + lhs.get_str() + " != " + rhs.get_str());
      ++rep.pairs_checked;
    }
  return rep;
}

DivisorSequence hilbert_sequence(const PolarizedLattice& l, const PullbackMapData& m,
                                 const DivisorClass& d, long n_max) {
  if (n_max < 0) throw DataError("hilbert sequence needs n_max >= 0");
  if (intersect(l, d, d) <= 0) throw DataError("starting class is not ample-flagged: (D.D) <= 0");
  std::vector<DivisorClass> curves;
  for (const auto& [label, c] : l.known_curves()) curves.push_back(c);
  if (!is_nef_against(l, d, curves))
    throw DataError("starting class is not ample-flagged: negative against a known curve");

  DivisorSequence seq;
  seq.d = d;
  seq.formal = !m.stability().iteration_certified();
  seq.terms.push_back(l.zero_class());
  seq.self_ints.push_back(Int(0));
  seq.k_ints.push_back(Int(0));
  seq.h.push_back(Int(1));  // degree-zero piece is the base field

  DivisorClass cur = d;  // P^n D
  for (long n = 1; n <= n_max; ++n) {
    DivisorClass dn = dc_add(seq.terms.back(), cur);
    Int si = intersect(l, dn, dn);
    Int ki = intersect(l, dn, l.canonical());
    seq.h.push_back(parity_checked_rr(l, si, ki));
    seq.terms.push_back(std::move(dn));
    seq.self_ints.push_back(std::move(si));
    seq.k_ints.push_back(std::move(ki));
    if (n < n_max) cur = pullback(m, cur);
  }
  return seq;
}

FitResult fit_growth(const std::vector<Int>& seq, size_t tail_start, const FitConfig& cfg) {
  if (tail_start < 1) throw DataError("fit tail must start at n >= 1");
  if (seq.size() <= tail_start || seq.size() - tail_start < cfg.min_tail)
    throw CapabilityError("insufficient data: fit tail shorter than " +
                          std::to_string(cfg.min_tail) + " points");

  std::vector<double> ns, lns, ys;
  for (size_t i = tail_start; i < seq.size(); ++i) {
    if (seq[i] <= 0) throw DataError("fit requires a positive sequence on the tail");
    ns.push_back(static_cast<double>(i));
    lns.push_back(std::log(static_cast<double>(i)));
    ys.push_back(log_int(seq[i]));
  }

  // Joint least squares ln a_n ~ c + s*n + t*ln n (3x3 normal equations).
  double m[3][4] = {};
  for (size_t i = 0; i < ns.size(); ++i) {
    double row[3] = {1.0, ns[i], lns[i]};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
      m[r][3] += row[r] * ys[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || m[col][col] == 0) continue;
      double f = m[r][col] / m[col][col];
      for (int c = 0; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  double slope_n = (m[1][1] != 0) ? m[1][3] / m[1][1] : 0.0;

  FitResult out;
  out.tail_points = ns.size();
  double rho_hat = std::exp(slope_n);
  if (std::fabs(rho_hat - 1.0) < cfg.rho_snap) {
    out.rho_hat = 1.0;
    out.j_hat = static_cast<int>(std::lround(ls_slope(lns, ys)));
  } else {
    out.rho_hat = rho_hat;
    std::vector<double> resid(ys);
    for (size_t i = 0; i < resid.size(); ++i) resid[i] -= ns[i] * slope_n;
    out.j_hat = static_cast<int>(std::lround(ls_slope(lns, resid)));
  }
  return out;
}

}  // namespace birat

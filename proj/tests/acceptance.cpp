// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "birat/curve.hpp"
#include "birat/growth.hpp"
#include "birat/hilbert.hpp"
#include "birat/io.hpp"
#include "birat/verify.hpp"

using namespace birat;

namespace {

const std::string kDir = CATALOG_DIR;
int failures = 0;

void criterion(int num, const std::string& label, const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;
  try {
    body();
  } catch (const std::exception& e) {
    pass = false;
    detail = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s  criterion %2d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", num, label.c_str(),
              secs, detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

struct Fail : std::runtime_error {
  explicit Fail(const std::string& m) : std::runtime_error(m) {}
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw Fail(msg);
}

IMat mk(std::vector<std::vector<long>> rows) {
  IMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[0].size(); ++j) m.at(i, j) = Int(rows[i][j]);
  return m;
}

StabilityCertificate stable_cert() {
  StabilityCertificate c;
  c.kind = StabilityKind::certified_stable;
  c.horizon = 10;
  return c;
}

}  // namespace

int main() {
  Catalog cat = load_catalog(kDir + "/catalog.json");

  criterion(1, "quadratic involution: degrees 2,1,2,1, square is the identity, instability witnessed", [&] {
    CoordinatePair cp = load_entry_coordinate(cat, cat.entry("cremona"));
    DegreeSequenceResult ds = degree_sequence(cp.map, 4);
    require(ds.degrees == std::vector<long>{2, 1, 2, 1}, "degree sequence mismatch");
    RationalMapP2 sq = compose_reduce(cp.map, cp.map);
    require(sq.degree() == 1, "square is not linear");
    require(sq.forms() == RationalMapP2::identity().forms(), "square is not the identity");
    StabilityCertificate cert = stability_check(cp.map, *cp.inverse, 10);
    require(cert.kind == StabilityKind::known_unstable, "expected instability");
    require(!cert.witness.empty(), "missing instability witness");
  });

  criterion(2, "stable quadratic pair: rho = 2 exactly, j = 0, exponential class, degrees 2,4,8,16", [&] {
    LoadedMap lm = load_entry_map(cat, cat.entry("nongeom-rho2"));
    GrowthData g = classify(*lm.map);
    require(g.rho_exact && g.rho_lo == 2, "rho != 2 exact");
    require(g.j == 0, "j != 0");
    require(g.growth_case == GrowthCase::Case4_exponential, "not the exponential case");
    require(g.gk == GkVerdict::exponential, "gk verdict not exponential");
    require(g.geometric == Geometric::not_determined, "geometricity should stay open");
    CoordinatePair cp = load_entry_coordinate(cat, cat.entry("nongeom-rho2"));
    DegreeSequenceResult ds = degree_sequence(cp.map, 4);
    require(ds.degrees == std::vector<long>{2, 4, 8, 16}, "degree sequence mismatch");
  });

  criterion(3, "verdict table across the four growth cases", [&] {
    require(classify(mk({{1}}), stable_cert()).gk == GkVerdict::gk3, "identity not gk3");
    require(classify(mk({{1, 1}, {0, 1}}), stable_cert()).gk == GkVerdict::gk4,
            "2x2 unipotent not gk4");
    GrowthData c3 = classify(mk({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}), stable_cert());
    require(c3.gk == GkVerdict::gk5 && c3.j == 2, "3x3 unipotent not gk5");
    require(c3.geometric == Geometric::yes, "quadratic case should be geometric");
    require(classify(mk({{2}}), stable_cert()).gk == GkVerdict::exponential, "[2] not exponential");
  });

  criterion(4, "Riemann-Roch sequences match closed forms up to n = 50", [&] {
    LoadedMap id = load_entry_map(cat, cat.entry("identity-p2"));
    DivisorSequence s1 = hilbert_sequence(*id.lattice, *id.map, *id.ample, 50);
    for (long n = 0; n <= 50; ++n)
      require(s1.h[static_cast<size_t>(n)] == (Int(n) + 1) * (n + 2) / 2,
              "plane h(" + std::to_string(n) + ") mismatch");
    LoadedMap fib = load_entry_map(cat, cat.entry("fibration-j1"));
    DivisorSequence s2 = hilbert_sequence(*fib.lattice, *fib.map, *fib.ample, 50);
    for (long n = 0; n <= 50; ++n) {
      Int want = (Int(n) * n * n + Int(2) * n * n + Int(3) * n) / 2 + 1;
      require(s2.h[static_cast<size_t>(n)] == want,
              "fibration h(" + std::to_string(n) + ") mismatch");
    }
  });

  criterion(5, "self-intersection recurrence: N = 2 over all 0 <= a <= b <= 30, (Dn.Dn) = n^3 + n^2", [&] {
    LoadedMap fib = load_entry_map(cat, cat.entry("fibration-j1"));
    DivisorClass d = *fib.ample;
    RecurrenceReport rep = selfint_recurrence_check(*fib.lattice, *fib.map, d, 30);
    require(rep.applicable, "recurrence hypotheses should hold: " + rep.skip_reason);
    require(rep.n_value == 2, "N != 2");
    require(rep.pairs_checked == 31 * 32 / 2, "wrong pair count");
    DivisorSequence seq = hilbert_sequence(*fib.lattice, *fib.map, d, 30);
    for (long n = 0; n <= 30; ++n)
      require(seq.self_ints[static_cast<size_t>(n)] == Int(n) * n * n + Int(n) * n,
              "(Dn.Dn) mismatch at n = " + std::to_string(n));
  });

  criterion(6, "growth fits: (1, 3) for the cubic sequence, rho within 1% of 4 for the exponential one", [&] {
    LoadedMap fib = load_entry_map(cat, cat.entry("fibration-j1"));
    DivisorSequence s = hilbert_sequence(*fib.lattice, *fib.map, *fib.ample, 60);
    FitResult f1 = fit_growth(s.h, 30);
    require(std::fabs(f1.rho_hat - 1.0) < 1e-9, "rho_hat did not snap to 1");
    require(f1.j_hat == 3, "j_hat != 3, got " + std::to_string(f1.j_hat));
    LoadedMap ex = load_entry_map(cat, cat.entry("nongeom-rho2"));
    DivisorSequence t = hilbert_sequence(*ex.lattice, *ex.map, *ex.ample, 20);
    FitResult f2 = fit_growth(t.h, 10);
    require(std::fabs(f2.rho_hat - 4.0) < 0.04, "rho_hat not within 1% of 4");
    require(f2.j_hat == 0, "j_hat != 0");
  });

  criterion(7, "curve families: recurrence holds, e_n = n + 1 (constant) and e_n = 2^n through n = 14 (doubling)", [&] {
    auto cst = build_family(family_from_json(read_json_file(kDir + "/family-constant.json")));
    ProductGrowth gc = product_growth(cst, cst.size());
    require(gc.violations.empty(), "constant family recurrence violation");
    for (size_t n = 1; n <= cst.size(); ++n)
      require(gc.e[n - 1] == static_cast<long>(n) + 1, "constant family dimension mismatch");
    auto dbl = build_family(family_from_json(read_json_file(kDir + "/family-doubling.json")));
    require(dbl.size() >= 14, "doubling family too short");
    ProductGrowth gd = product_growth(dbl, 14);
    require(gd.violations.empty(), "doubling family recurrence violation");
    for (size_t n = 1; n <= 14; ++n)
      require(gd.e[n - 1] == (1L << n), "doubling family dimension mismatch at n = " +
                                            std::to_string(n));
    auto grw = build_family(family_from_json(read_json_file(kDir + "/family-growing.json")));
    ProductGrowth gg = product_growth(grw, grw.size());
    require(gg.violations.empty(), "growing family recurrence violation");
  });

  criterion(8, "recurrence lower bounds: sqrt rule exponent >= 1.9 at 10^5, n-1 rule rate -> 1.6180", [&] {
    auto sqrt_rule = [](long n) {
      long m = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n))));
      return std::max(1L, std::min(m, n));
    };
    RecurrenceBound b1 = recurrence_lower_bound(1.0, sqrt_rule, 100000);
    require(b1.fitted_exponent >= 1.9,
            "exponent " + std::to_string(b1.fitted_exponent) + " below 1.9");
    RecurrenceBound b2 =
        recurrence_lower_bound(1.0, [](long n) { return std::max(1L, n - 1); }, 60);
    require(std::fabs(b2.fitted_rate - 1.6180) < 1e-3,
            "rate " + std::to_string(b2.fitted_rate) + " not near 1.6180");
  });

  criterion(9, "catalog-wide verification suite passes", [&] {
    VerifySummary sum = run_verification(cat, 17);
    for (const auto& c : sum.checks)
      require(c.pass, c.entry + "/" + c.check + ": " + c.detail);
  });

  criterion(10, "unbalanced scan flags exactly the three inverse-image points with horizon-10 evidence", [&] {
    CoordinatePair cp = load_entry_coordinate(cat, cat.entry("nongeom-rho2"));
    UnbalancedScanResult scan = unbalanced_scan(cp.map, *cp.inverse, 10);
    require(scan.applicable, "scan inapplicable: " + scan.reason);
    require(scan.flagged.size() == 3, "expected exactly 3 flagged points, got " +
                                          std::to_string(scan.flagged.size()));
    std::vector<ProjPoint> expect = {make_proj_point(1, 1, -1), make_proj_point(-1, 1, 1),
                                     make_proj_point(1, -1, 1)};
    for (const auto& p : expect) {
      bool hit = false;
      for (const auto& ev : scan.flagged)
        if (ev.point == p && ev.backward_defined == 10 && ev.forward_undefined >= 5) hit = true;
      require(hit, "missing or under-evidenced flag for " + p.to_string());
    }
  });

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}

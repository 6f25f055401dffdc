#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birat/errors.hpp"
#include "birat/growth.hpp"

using namespace birat;

static IMat make(std::vector<std::vector<long>> rows) {
  IMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[0].size(); ++j) m.at(i, j) = Int(rows[i][j]);
  return m;
}

static std::vector<Int> iv(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.push_back(Int(c));
  return v;
}

static StabilityCertificate cert(StabilityKind k, long horizon = 0) {
  StabilityCertificate c;
  c.kind = k;
  c.horizon = horizon;
  return c;
}

TEST_CASE("spectral radius: root-of-unity spectra") {
  SpectralRadius r = spectral_radius(make({{1}}));
  CHECK(r.one);
  CHECK(r.exact);
  CHECK(r.lo == 1);

  // Rotation: eigenvalues +-i.
  CHECK(spectral_radius(make({{0, -1}, {1, 0}})).one);
  // Unipotent: eigenvalue 1 twice.
  CHECK(spectral_radius(make({{1, 1}, {0, 1}})).one);
}

TEST_CASE("spectral radius: exact integer") {
  SpectralRadius r = spectral_radius(make({{2}}));
  CHECK(!r.one);
  CHECK(r.exact);
  CHECK(r.lo == 2);
  CHECK(r.hi == 2);
  CHECK(r.sq_exact);
}

TEST_CASE("spectral radius: golden ratio") {
  SpectralRadius r = spectral_radius(make({{1, 1}, {1, 0}}));
  CHECK(!r.one);
  CHECK(!r.exact);
  // phi = 1.6180339887498948...
  CHECK(r.lo < Rat(16180339888, 10000000000));
  CHECK(r.hi > Rat(16180339887, 10000000000));
  CHECK(r.hi - r.lo <= Rat(2, 10000000000000));
  CHECK(r.factor == IPoly(iv({-1, -1, 1})));
}

TEST_CASE("spectral radius: quadratic unit 2.618...") {
  // Companion of x^2 - 3x + 1; largest root (3 + sqrt 5)/2.
  SpectralRadius r = spectral_radius(make({{3, -1}, {1, 0}}));
  CHECK(!r.exact);
  CHECK(r.lo < Rat(26180339888, 10000000000));
  CHECK(r.hi > Rat(26180339887, 10000000000));
}

TEST_CASE("modulus-rho membership of factors") {
  // diag(2, 1): factors x-2 and x-1; only x-2 carries modulus rho.
  SpectralRadius r = spectral_radius(make({{2, 0}, {0, 1}}));
  CHECK(factor_has_modulus_rho_root(iv({-2, 1}), r));
  CHECK(!factor_has_modulus_rho_root(iv({-1, 1}), r));
}

TEST_CASE("norm growth") {
  auto norms = norm_growth(make({{2}}), 5);
  CHECK(norms == std::vector<Int>{Int(2), Int(4), Int(8), Int(16), Int(32)});
}

TEST_CASE("jordan index") {
  CHECK(jordan_index(make({{1}}), spectral_radius(make({{1}}))) == 0);
  IMat u2 = make({{1, 1}, {0, 1}});
  CHECK(jordan_index(u2, spectral_radius(u2)) == 1);
  IMat u3 = make({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  CHECK(jordan_index(u3, spectral_radius(u3)) == 2);
  IMat d = make({{2, 0}, {0, 1}});
  CHECK(jordan_index(d, spectral_radius(d)) == 0);
  // Rotation block beside a fixed line: still j = 0.
  IMat rot = make({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
  CHECK(jordan_index(rot, spectral_radius(rot)) == 0);
}

TEST_CASE("classification of the four cases") {
  GrowthData c1 = classify(make({{1}}), cert(StabilityKind::certified_automorphism));
  CHECK(c1.growth_case == GrowthCase::Case1_bounded);
  CHECK(c1.gk == GkVerdict::gk3);
  CHECK(c1.geometric == Geometric::yes);
  CHECK(c1.rho_exact);
  CHECK(!c1.formal);

  GrowthData c2 = classify(make({{1, 1}, {0, 1}}), cert(StabilityKind::certified_stable, 10));
  CHECK(c2.growth_case == GrowthCase::Case2_linear_fibration);
  CHECK(c2.gk == GkVerdict::gk4);
  CHECK(c2.geometric == Geometric::no);
  CHECK(c2.j == 1);

  GrowthData c3 = classify(make({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}),
                           cert(StabilityKind::certified_stable, 10));
  CHECK(c3.growth_case == GrowthCase::Case3_quadratic);
  CHECK(c3.gk == GkVerdict::gk5);
  CHECK(c3.geometric == Geometric::yes);
  CHECK(c3.j == 2);

  GrowthData c4 = classify(make({{2}}), cert(StabilityKind::certified_stable, 10));
  CHECK(c4.growth_case == GrowthCase::Case4_exponential);
  CHECK(c4.gk == GkVerdict::exponential);
  CHECK(c4.geometric == Geometric::not_determined);
  CHECK(c4.rho_exact);
  CHECK(c4.rho_lo == 2);
  CHECK(c4.j == 0);
}

TEST_CASE("classification rejects inconsistent data") {
  // rho = 1 with j = 3 falls outside the trichotomy.
  IMat u4 = make({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
  CHECK_THROWS_AS(classify(u4, cert(StabilityKind::certified_stable, 10)), DataError);
  // Nilpotent pullback has rho < 1.
  CHECK_THROWS_AS(classify(make({{0, 1}, {0, 0}}), cert(StabilityKind::unknown)), DataError);
}

TEST_CASE("formal flag follows the certificate") {
  CHECK(classify(make({{2}}), cert(StabilityKind::unknown)).formal);
  CHECK(classify(make({{2}}), cert(StabilityKind::known_unstable)).formal);
  CHECK(!classify(make({{2}}), cert(StabilityKind::certified_stable, 5)).formal);
}

TEST_CASE("rho rendering") {
  GrowthData g = classify(make({{1, 1}, {1, 0}}), cert(StabilityKind::certified_stable, 10));
  std::string s = g.rho_string();
  CHECK(s.find("1.6180339887") != std::string::npos);
  GrowthData e = classify(make({{2}}), cert(StabilityKind::unknown));
  CHECK(e.rho_string().find("2") != std::string::npos);
}

TEST_CASE("power iteration ratios on the fibration model") {
  PolarizedLattice l(make({{0, 1}, {1, 0}}), DivisorClass{0, iv({-2, -2})}, Int(0), {"F1", "F2"},
                     {{"r1", DivisorClass{0, iv({1, 0})}}, {"r2", DivisorClass{0, iv({0, 1})}}});
  std::vector<DivisorClass> exc = {l.make_class(iv({1, 0})), l.make_class(iv({1, 0}))};
  PullbackMapData m(l, make({{1, 1}, {0, 1}}), make({{1, 1}, {0, 1}}), exc,
                    {l.make_class(iv({1, 0}))}, cert(StabilityKind::certified_stable, 10));
  DivisorClass ample = l.make_class(iv({1, 1}));
  // (P^n E.E) = n + 2, so the ratios are (n+3)/(n+2).
  auto ratios = power_iteration_rho(l, m, ample, 4);
  REQUIRE(ratios.size() == 4);
  CHECK(ratios[0] == Rat(3, 2));
  CHECK(ratios[1] == Rat(4, 3));
  CHECK(ratios[2] == Rat(5, 4));
  CHECK(ratios[3] == Rat(6, 5));

  PullbackMapData bad(l, make({{1, 1}, {0, 1}}), make({{1, 1}, {0, 1}}), exc,
                      {l.make_class(iv({1, 0}))}, cert(StabilityKind::known_unstable));
  CHECK_THROWS_AS(power_iteration_rho(l, bad, ample, 4), CapabilityError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birat/errors.hpp"
#include "birat/lattice.hpp"

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

static PolarizedLattice plane() {
  return PolarizedLattice(make({{1}}), DivisorClass{0, iv({-3})}, Int(0), {"H"},
                          {{"line", DivisorClass{0, iv({1})}}});
}

static PolarizedLattice quadric() {
  return PolarizedLattice(make({{0, 1}, {1, 0}}), DivisorClass{0, iv({-2, -2})}, Int(0),
                          {"F1", "F2"},
                          {{"r1", DivisorClass{0, iv({1, 0})}}, {"r2", DivisorClass{0, iv({0, 1})}}});
}

TEST_CASE("construction validation") {
  // Asymmetric form rejected.
  CHECK_THROWS_AS(PolarizedLattice(make({{0, 1}, {0, 0}}), DivisorClass{0, iv({0, 0})}, Int(0),
                                   {}, {}),
                  DataError);
  // Degenerate form rejected.
  CHECK_THROWS_AS(PolarizedLattice(make({{1, 1}, {1, 1}}), DivisorClass{0, iv({-2, -2})}, Int(0),
                                   {}, {}),
                  DataError);
  // Wrong signature (2 positive eigenvalues) rejected.
  CHECK_THROWS_AS(PolarizedLattice(make({{1, 0}, {0, 1}}), DivisorClass{0, iv({-2, -2})}, Int(0),
                                   {}, {}),
                  DataError);
  // Adjunction parity violated by a known curve: (H.H) + (H.K) = -1.
  CHECK_THROWS_AS(PolarizedLattice(make({{1}}), DivisorClass{0, iv({-2})}, Int(0), {"H"},
                                   {{"line", DivisorClass{0, iv({1})}}}),
                  DataError);
}

TEST_CASE("intersection numbers") {
  PolarizedLattice l = plane();
  DivisorClass h = l.basis_class(0);
  CHECK(intersect(l, h, h) == 1);
  CHECK(intersect(l, dc_scale(h, Int(3)), dc_scale(h, Int(4))) == 12);
  CHECK(intersect(l, h, l.canonical()) == -3);

  PolarizedLattice q = quadric();
  DivisorClass d = q.make_class(iv({2, 5}));
  CHECK(intersect(q, d, d) == 20);
  CHECK(intersect(q, d, q.canonical()) == -14);

  // Cross-lattice intersection fails loudly.
  CHECK_THROWS_AS(intersect(l, h, q.make_class(iv({1, 0}))), DataError);
}

TEST_CASE("nef probing") {
  PolarizedLattice q = quadric();
  std::vector<DivisorClass> curves = {q.make_class(iv({1, 0})), q.make_class(iv({0, 1}))};
  CHECK(is_nef_against(q, q.make_class(iv({1, 1})), curves));
  CHECK(is_nef_against(q, q.make_class(iv({0, 1})), curves));
  CHECK(!is_nef_against(q, q.make_class(iv({-1, 2})), curves));
}

TEST_CASE("blowup and contraction round-trip") {
  PolarizedLattice l = plane();
  BlowupResult up = blowup(l, "E1");
  CHECK(up.lattice.rank() == 2);
  CHECK(intersect(up.lattice, up.exceptional, up.exceptional) == -1);
  CHECK(up.lattice.canonical().coeffs == iv({-3, 1}));
  CHECK(intersect(up.lattice, up.lattice.canonical(), up.lattice.canonical()) == 8);

  ContractResult down = contract(up.lattice, up.exceptional);
  CHECK(down.lattice.intersection() == l.intersection());
  CHECK(down.lattice.canonical().coeffs == l.canonical().coeffs);

  // projection o embedding = id on the contracted model.
  DivisorClass d = down.lattice.make_class(iv({5}));
  CHECK(down.projection.apply(down.embedding.apply(d)).coeffs == d.coeffs);
}

TEST_CASE("contraction rejects non-(-1)-classes") {
  PolarizedLattice q = quadric();
  CHECK_THROWS_AS(contract(q, q.make_class(iv({1, 0}))), DataError);
}

TEST_CASE("eigenvalue signature counts") {
  CHECK(positive_eigenvalue_count(make({{1}})) == 1);
  CHECK(positive_eigenvalue_count(make({{0, 1}, {1, 0}})) == 1);
  CHECK(positive_eigenvalue_count(make({{1, 0}, {0, -1}})) == 1);
  CHECK(positive_eigenvalue_count(make({{1, 0}, {0, 1}})) == 2);
  CHECK(positive_eigenvalue_count(make({{-1, 0}, {0, -1}})) == 0);
}

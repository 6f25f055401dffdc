#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birat/errors.hpp"
#include "birat/io.hpp"
#include "birat/verify.hpp"

using namespace birat;

static const std::string kDir = CATALOG_DIR;

TEST_CASE("integer encoding") {
  CHECK(int_to_json(Int(42)).is_number_integer());
  CHECK(json_to_int(int_to_json(Int(-7))) == -7);
  Int big("123456789012345678901234567890123456789");
  Json j = int_to_json(big);
  CHECK(j.is_string());
  CHECK(json_to_int(j) == big);
  CHECK(json_to_int(Json("-5")) == -5);
  CHECK_THROWS_AS(json_to_int(Json(1.5)), DataError);
}

TEST_CASE("matrix encoding") {
  IMat m(2, 2);
  m.at(0, 0) = Int("99999999999999999999999999");
  m.at(1, 1) = Int(-3);
  CHECK(json_to_imat(imat_to_json(m)) == m);
  CHECK_THROWS_AS(json_to_imat(Json::parse("[[1,2],[3]]")), DataError);
}

TEST_CASE("lattice round trip") {
  auto l1 = lattice_from_json(read_json_file(kDir + "/p2.json"));
  auto l2 = lattice_from_json(lattice_to_json(*l1));
  CHECK(lattice_equal(*l1, *l2));
  CHECK(l1->rank() == 1);
  CHECK(l1->known_curves().size() == 1);

  auto q = lattice_from_json(read_json_file(kDir + "/p1xp1.json"));
  CHECK(q->rank() == 2);
  CHECK(intersect(*q, q->canonical(), q->canonical()) == 8);
}

TEST_CASE("map round trip keeps the ample class") {
  auto l = lattice_from_json(read_json_file(kDir + "/p2.json"));
  LoadedMap m1 = map_from_json(read_json_file(kDir + "/cremona-map.json"), l);
  REQUIRE(m1.ample);
  LoadedMap m2 = map_from_json(map_to_json(*m1.map, m1.ample), l);
  CHECK(map_equal(*m1.map, *m2.map));
  REQUIRE(m2.ample);
  CHECK(m2.ample->coeffs == m1.ample->coeffs);
  CHECK(m1.map->stability().kind == StabilityKind::known_unstable);
}

TEST_CASE("coordinate round trip") {
  CoordinatePair c1 = coordinate_from_json(read_json_file(kDir + "/tau-phi-coord.json"));
  CoordinatePair c2 = coordinate_from_json(coordinate_to_json(c1));
  CHECK(c1.map.forms() == c2.map.forms());
  REQUIRE(c2.inverse);
  CHECK(c1.inverse->forms() == c2.inverse->forms());
  CHECK(c2.horizon == c1.horizon);
  CHECK(c1.map.contracted_curves().size() == 3);
}

TEST_CASE("family round trip and construction") {
  CurveFamilySpec f1 = family_from_json(read_json_file(kDir + "/family-doubling.json"));
  CurveFamilySpec f2 = family_from_json(family_to_json(f1));
  CHECK(f1.kind == f2.kind);
  CHECK(f1.count == f2.count);
  auto spaces = build_family(f1);
  CHECK(spaces.size() == f1.count);
  CHECK(spaces[0].dim() == 2);
  CHECK_THROWS_AS(family_from_json(Json{{"kind", "nope"}, {"count", 3}}), DataError);
}

TEST_CASE("catalog loading") {
  Catalog cat = load_catalog(kDir + "/catalog.json");
  CHECK(cat.entries.size() == 7);
  const CatalogEntry& e = cat.entry("fibration-j1");
  CHECK(e.expected.gk == "gk4");
  CHECK(e.expected.j == 1);
  CHECK_THROWS_AS(cat.entry("no-such-entry"), CapabilityError);
  CHECK_THROWS_AS(load_entry_coordinate(cat, cat.entry("identity-p2")), CapabilityError);
  LoadedMap lm = load_entry_map(cat, cat.entry("nongeom-rho2"));
  CHECK(lm.map->p().at(0, 0) == 2);
}

TEST_CASE("corrupted inputs are rejected") {
  CHECK_THROWS_AS(lattice_from_json(read_json_file(kDir + "/negative/bad-parity-lattice.json")),
                  DataError);
  auto l = lattice_from_json(read_json_file(kDir + "/p2.json"));
  CHECK_THROWS_AS(map_from_json(read_json_file(kDir + "/negative/bad-excess-map.json"), l),
                  DataError);
  CHECK_THROWS_AS(read_json_file(kDir + "/does-not-exist.json"), CapabilityError);
}

TEST_CASE("verification suite over the shipped catalog") {
  Catalog cat = load_catalog(kDir + "/catalog.json");
  VerifySummary sum = run_verification(cat, 17);
  for (const auto& c : sum.checks) {
    INFO(c.entry, "/", c.check, ": ", c.detail);
    CHECK(c.pass);
  }
  CHECK(sum.all_pass());
  CHECK(sum.to_json()["all_pass"] == true);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birat/errors.hpp"
#include "birat/poly.hpp"

using namespace birat;

static IPoly ip(std::initializer_list<long> cs) {
  IPoly p;
  for (long c : cs) p.push_back(Int(c));
  ipoly_trim(p);
  return p;
}

TEST_CASE("arithmetic basics") {
  IPoly a = ip({1, 1});   // 1 + x
  IPoly b = ip({-1, 1});  // -1 + x
  CHECK(ipoly_mul(a, b) == ip({-1, 0, 1}));
  CHECK(ipoly_add(a, b) == ip({0, 2}));
  CHECK(ipoly_sub(a, a) == IPoly{});
  CHECK(ipoly_pow(a, 3) == ip({1, 3, 3, 1}));
  CHECK(ipoly_eval(ip({-1, 0, 1}), Int(5)) == 24);
  CHECK(ipoly_derivative(ip({7, 2, 3})) == ip({2, 6}));
}

TEST_CASE("division and gcd") {
  // (x^2 - 1) and (x^3 - 1) share exactly x - 1.
  CHECK(ipoly_gcd(ip({-1, 0, 1}), ip({-1, 0, 0, 1})) == ip({-1, 1}));
  CHECK(ipoly_div_exact(ip({-1, 0, 1}), ip({-1, 1})) == ip({1, 1}));
  CHECK_THROWS_AS(ipoly_div_exact(ip({1, 0, 1}), ip({-1, 1})), DataError);
  CHECK(ipoly_content(ip({6, -9, 12})) == 3);
}

TEST_CASE("squarefree structure") {
  // (x - 1)^2 (x + 2) = x^3 - 3x + 2
  IPoly p = ip({2, -3, 0, 1});
  CHECK(ipoly_squarefree_part(p) == ip({-2, 1, 1}));
  auto dec = ipoly_squarefree_decomposition(p);
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].first == ip({2, 1}));
  CHECK(dec[0].second == 1);
  CHECK(dec[1].first == ip({-1, 1}));
  CHECK(dec[1].second == 2);
}

TEST_CASE("cyclotomic removal") {
  // x^3 - 1 is a product of cyclotomics.
  CHECK(ipoly_deg(ipoly_remove_cyclotomic(ip({-1, 0, 0, 1}))) == 0);
  // x^2 - x - 1 has the golden ratio as a root.
  IPoly fib = ip({-1, -1, 1});
  CHECK(ipoly_remove_cyclotomic(fib) == fib);
  CHECK(ipoly_all_roots_on_unit_circle_or_zero(ip({1, 0, 1})));
  CHECK(ipoly_all_roots_on_unit_circle_or_zero(ip({0, 0, 1})));
  CHECK(!ipoly_all_roots_on_unit_circle_or_zero(ip({-2, 1})));
}

TEST_CASE("sturm counting and isolation") {
  IPoly p = ip({-2, 0, 1});  // x^2 - 2
  CHECK(sturm_count_roots(p, Rat(0), Rat(2)) == 1);
  CHECK(sturm_count_roots(p, Rat(-2), Rat(2)) == 2);
  CHECK(sturm_count_roots(p, Rat(15, 10), Rat(2)) == 0);

  RootInterval ri;
  REQUIRE(isolate_max_real_root(p, Rat(0), Rat(1, 1000000), ri));
  CHECK(ri.hi - ri.lo <= Rat(1, 1000000));
  // sqrt(2) = 1.41421356...
  CHECK(ri.lo < Rat(1414214, 1000000));
  CHECK(ri.hi > Rat(1414213, 1000000));

  // Exact integer root detection.
  REQUIRE(isolate_max_real_root(ip({-6, 1, 1}), Rat(0), Rat(1, 1000000), ri));
  CHECK(ri.exact);
  CHECK(ri.lo == Rat(2));

  CHECK(!isolate_max_real_root(ip({1, 0, 1}), Rat(-10), Rat(1, 100), ri));
}

TEST_CASE("root products") {
  // Roots {1, 2} -> pair products {1, 2, 4}.
  IPoly g = ipoly_root_products(ip({2, -3, 1}));
  CHECK(ipoly_deg(g) == 3);
  CHECK(ipoly_eval(g, Int(1)) == 0);
  CHECK(ipoly_eval(g, Int(2)) == 0);
  CHECK(ipoly_eval(g, Int(4)) == 0);
  CHECK(ipoly_eval(g, Int(3)) != 0);
  CHECK_THROWS_AS(ipoly_root_products(ip({0, 1})), DataError);
}

TEST_CASE("resultant") {
  // Res(x^2 - 2, x^2 - 3) = 1 (coprime), Res(x - 2, x^2 - 4) = 0.
  CHECK(qpoly_resultant(ipoly_to_q(ip({-2, 0, 1})), ipoly_to_q(ip({-3, 0, 1}))) == 1);
  CHECK(qpoly_resultant(ipoly_to_q(ip({-2, 1})), ipoly_to_q(ip({-4, 0, 1}))) == 0);
}

TEST_CASE("decimal rendering") {
  CHECK(rat_to_decimal(Rat(1, 3), 5) == "0.33333");
  CHECK(rat_to_decimal(Rat(-7, 2), 2) == "-3.50");
  CHECK(rat_to_decimal(Rat(2), 3) == "2.000");
  CHECK(rat_to_decimal(Rat(1, 1000), 5) == "0.00100");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "birat/matrix.hpp"

using namespace birat;

static IMat make(std::vector<std::vector<long>> rows) {
  IMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[0].size(); ++j) m.at(i, j) = Int(rows[i][j]);
  return m;
}

// Independent char-poly oracle: cofactor expansion of det(xI - P) over Q[x].
static QPoly cofactor_char_poly(const IMat& p) {
  size_t n = p.rows();
  std::vector<std::vector<QPoly>> a(n, std::vector<QPoly>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      QPoly e;
      e.push_back(Rat(-p.at(i, j)));
      if (i == j) e.push_back(Rat(1));
      qpoly_trim(e);
      a[i][j] = e;
    }
  std::function<QPoly(std::vector<std::vector<QPoly>>)> det =
      [&](std::vector<std::vector<QPoly>> m) -> QPoly {
    if (m.size() == 1) return m[0][0];
    QPoly acc;
    for (size_t j = 0; j < m.size(); ++j) {
      std::vector<std::vector<QPoly>> minor;
      for (size_t i = 1; i < m.size(); ++i) {
        std::vector<QPoly> row;
        for (size_t k = 0; k < m.size(); ++k)
          if (k != j) row.push_back(m[i][k]);
        minor.push_back(row);
      }
      QPoly term = qpoly_mul(m[0][j], det(minor));
      if (j % 2) term = qpoly_sub(QPoly{}, term);
      acc = qpoly_add(acc, term);
    }
    return acc;
  };
  return det(a);
}

TEST_CASE("multiply, power, apply") {
  IMat a = make({{1, 2}, {3, 4}});
  IMat b = make({{0, 1}, {1, 0}});
  CHECK(imat_mul(a, b) == make({{2, 1}, {4, 3}}));
  CHECK(imat_pow(a, 0) == IMat::identity(2));
  CHECK(imat_pow(b, 5) == b);
  auto v = imat_apply(a, {Int(1), Int(1)});
  CHECK(v == std::vector<Int>{Int(3), Int(7)});
  CHECK(a.trace() == 5);
  CHECK(a.max_abs_entry() == 4);
}

TEST_CASE("determinant and characteristic polynomial") {
  IMat a = make({{2, 1, 0}, {1, 3, -1}, {0, 4, 5}});
  CHECK(imat_det(a) == 33);
  IPoly cp = char_poly(a);
  QPoly oracle = cofactor_char_poly(a);
  REQUIRE(cp.size() == oracle.size());
  for (size_t i = 0; i < cp.size(); ++i) CHECK(Rat(cp[i]) == oracle[i]);
  // Cayley-Hamilton.
  CHECK(ipoly_eval_matrix(cp, a).is_zero());
}

TEST_CASE("characteristic polynomial with large entries") {
  IMat a(2, 2);
  a.at(0, 0) = Int("123456789012345678901234567890");
  a.at(0, 1) = Int(7);
  a.at(1, 0) = Int(-3);
  a.at(1, 1) = Int("-98765432109876543210");
  IPoly cp = char_poly(a);
  QPoly oracle = cofactor_char_poly(a);
  REQUIRE(cp.size() == oracle.size());
  for (size_t i = 0; i < cp.size(); ++i) CHECK(Rat(cp[i]) == oracle[i]);
}

TEST_CASE("integer inverse") {
  IMat u = make({{2, 1}, {1, 1}});  // det 1
  auto inv = imat_integer_inverse(u);
  REQUIRE(inv);
  CHECK(imat_mul(u, *inv) == IMat::identity(2));
  CHECK(!imat_integer_inverse(make({{2, 0}, {0, 1}})));
  CHECK(!imat_integer_inverse(make({{1, 1}, {1, 1}})));
}

TEST_CASE("hnf row basis and integral solve") {
  IMat b = make({{2, 0, 2}, {0, 3, 3}});
  IMat h = imat_hnf_row_basis(b);
  CHECK(h.rows() == 2);
  auto x = solve_integral_in_row_span(b, {Int(2), Int(3), Int(5)});
  REQUIRE(x);
  CHECK((*x)[0] * b.at(0, 0) == 2);
  CHECK(!solve_integral_in_row_span(b, {Int(1), Int(0), Int(1)}));
  CHECK(!solve_integral_in_row_span(b, {Int(0), Int(0), Int(1)}));
}

TEST_CASE("random unimodular") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    IMat u = random_unimodular(4, rng, 16);
    Int d = imat_det(u);
    CHECK((d == 1 || d == -1));
  }
}

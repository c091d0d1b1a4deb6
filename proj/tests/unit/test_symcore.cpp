#include <random>

#include "doctest.h"
#include "flatpde/sym/linalg.hpp"
#include "flatpde/sym/printer.hpp"
#include "flatpde/sym/universe.hpp"

using namespace flatpde::sym;

namespace {

struct Fixture {
  UniversePtr u = VarUniverse::jet(2);
  RationalExpr x1 = RationalExpr::variable(u->x(1));
  RationalExpr x2 = RationalExpr::variable(u->x(2));
  RationalExpr y = RationalExpr::variable(u->y());
  RationalExpr p1 = RationalExpr::variable(u->p(1));
};

Polynomial random_poly(std::mt19937_64& rng, const std::vector<Var>& vars, unsigned max_deg, int terms) {
  std::uniform_int_distribution<int> coeff(-5, 5), exp(0, static_cast<int>(max_deg));
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    unsigned budget = max_deg;
    for (Var v : vars) {
      unsigned e = std::min<unsigned>(budget, static_cast<unsigned>(exp(rng)) % (max_deg + 1));
      m.set(v.index, e);
      budget -= e;
    }
    ts.push_back({m, coeff(rng)});
  }
  return Polynomial::from_terms(ts);
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "arith examples") {
  CHECK((x1 - x1).is_zero());
  RationalExpr one_plus = x1 + 1;
  CHECK(RationalExpr(1) / one_plus * one_plus == RationalExpr(1));
  CHECK((x1 * x1 - 1) / (x1 - 1) == x1 + 1);
  CHECK_THROWS_AS(x1 / RationalExpr(), DivisionByZeroExpr);
}

TEST_CASE_FIXTURE(Fixture, "canonical form") {
  RationalExpr e = RationalExpr::fraction((x1 * x1 - 1).num(), Polynomial(-2) * (x1 - 1).num());
  CHECK(e.den().leading_coeff() > 0);
  CHECK(e == (x1 + 1) / RationalExpr(-2));
  CHECK(RationalExpr(Scalar(2, 4)) == RationalExpr(1) / 2);
  CHECK(render(e, *u) == "(-x[1] - 1)/2");
}

TEST_CASE_FIXTURE(Fixture, "differentiate examples") {
  CHECK(differentiate(y * (1 + x1), u->x(1)) == y);
  CHECK(differentiate(RationalExpr(1) / (1 + x1), u->x(1)) == RationalExpr(-1) / ((1 + x1) * (1 + x1)));
  CHECK(differentiate(x1.pow(3) * y.pow(2), u->y()) == 2 * x1.pow(3) * y);
  CHECK_THROWS_AS(differentiate(x1, Var{200}), UnknownVariable);
}

TEST_CASE_FIXTURE(Fixture, "substitute examples") {
  Var q11 = u->q(1, 1);
  RationalExpr f = RationalExpr(-2) * p1 / (1 + x1);
  CHECK(substitute(RationalExpr::variable(q11), {{q11, f}}) == f);
  CHECK(substitute(x1 + y, {}) == x1 + y);
  CHECK_THROWS_AS(substitute(RationalExpr(1) / (y - x1), {{u->y(), x1}}), SubstitutionSingularity);
  CHECK(substitute(x1 * x1 / (y + 1), {{u->x(1), y / x2}, {u->y(), x1}}) == y * y / (x2 * x2 * (x1 + 1)));
}

TEST_CASE_FIXTURE(Fixture, "determinant examples") {
  Matrix id{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(determinant(id) == RationalExpr(1));
  CHECK(determinant({{1, 0, 0}, {0, 1, 0}, {y, 0, 1 + x1}}) == 1 + x1);
  CHECK(determinant({{0, 0, 0}, {0, 1, 0}, {2, 0, 1}}).is_zero());
  CHECK_THROWS_AS(determinant({{1, 2}}), NonSquareMatrix);
}

TEST_CASE_FIXTURE(Fixture, "Bareiss agrees with cofactor expansion") {
  std::mt19937_64 rng(7);
  std::vector<Var> vars{u->x(1), u->x(2), u->y()};
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m(4, Vector(4));
    for (auto& row : m)
      for (auto& e : row) e = RationalExpr(random_poly(rng, vars, 1, 2));
    // Laplace expansion along row 0 using 3x3 minors.
    RationalExpr expected;
    for (std::size_t j = 0; j < 4; ++j) {
      Matrix minor;
      for (std::size_t i = 1; i < 4; ++i) {
        Vector r;
        for (std::size_t k = 0; k < 4; ++k)
          if (k != j) r.push_back(m[i][k]);
        minor.push_back(r);
      }
      RationalExpr t = m[0][j] * determinant(minor);
      expected += (j % 2 == 0) ? t : -t;
    }
    CHECK(determinant(m) == expected);
  }
}

TEST_CASE_FIXTURE(Fixture, "solve_linear examples") {
  Matrix id{{1, 0}, {0, 1}};
  auto r = solve_linear(id, {x1, y});
  REQUIRE(std::holds_alternative<Solution>(r));
  CHECK(std::get<Solution>(r).x == Vector{x1, y});

  CHECK(std::holds_alternative<Inconsistent>(solve_linear({{1}, {1}}, {1, 2})));

  auto u2 = solve_linear({{x1, 1}}, {x1 + 1});
  REQUIRE(std::holds_alternative<Underdetermined>(u2));
  const auto& und = std::get<Underdetermined>(u2);
  // Pivot on the degree-0 entry; the free unknown is zero.
  CHECK(und.particular == Vector{0, x1 + 1});
  REQUIRE(und.kernel.size() == 1);
  CHECK(und.kernel[0] == Vector{1, -x1});
  // (1, 1) lies in the solution space: particular + 1 * kernel.
  CHECK(und.particular[0] + und.kernel[0][0] == RationalExpr(1));
  CHECK(und.particular[1] + und.kernel[0][1] == RationalExpr(1));
}

TEST_CASE_FIXTURE(Fixture, "is_zero examples") {
  CHECK(is_zero((x1 + y) - (y + x1)));
  CHECK(is_zero((x1 * x1 - 1) - (x1 - 1) * (x1 + 1)));
  CHECK_FALSE(is_zero(x1 - x2));
}

TEST_CASE_FIXTURE(Fixture, "gcd recovers planted common factors") {
  std::mt19937_64 rng(3);
  std::vector<Var> vars{u->x(1), u->x(2), u->y(), u->p(1), u->p(2)};
  for (int trial = 0; trial < 60; ++trial) {
    Polynomial g = random_poly(rng, vars, 2, 3);
    Polynomial a = random_poly(rng, vars, 2, 3);
    Polynomial b = random_poly(rng, vars, 2, 3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    Polynomial h = gcd(g * a, g * b);
    CHECK((g * a).divide_exact(h).has_value());
    CHECK((g * b).divide_exact(h).has_value());
    CHECK(h.divide_exact(g).has_value());
    // Cofactors coprime.
    Polynomial ca = *(g * a).divide_exact(h), cb = *(g * b).divide_exact(h);
    Polynomial one = gcd(ca, cb);
    CHECK(one == Polynomial(1));
  }
}

TEST_CASE("universe layout") {
  auto u = VarUniverse::jet(3, {"c1"});
  CHECK(u->name(u->x(3)) == "x[3]");
  CHECK(u->name(u->p(2)) == "dy[2]");
  CHECK(u->name(u->q(3, 2)) == "ddy[2][3]");
  CHECK(u->name(u->q(3, 3)) == "ddy[3][3]");
  CHECK(u->name(u->theta(4)) == "Theta[4]");
  CHECK(u->name(u->param(0)) == "c1");
  CHECK(u->coordinate(4) == u->y());
  CHECK(u->lookup("ddy[1][3]") == u->q(1, 3));
  CHECK_THROWS_AS(u->lookup("z"), UnknownVariable);
}

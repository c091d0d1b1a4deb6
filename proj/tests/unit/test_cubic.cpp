#include "doctest.h"
#include "flatpde/corpus.hpp"
#include "helpers.hpp"

using namespace flatpde;
using testing::E;

TEST_CASE("expand_cubic examples") {
  const JetContext ctx(2);
  CHECK(all_zero(integrability_residuals(expand_cubic(CubicForm(ctx))).residuals));

  CubicForm m(ctx);
  m.set_M(1, 1);
  const PdeSystem fm = expand_cubic(m);
  CHECK(fm.F(1, 1) == E(ctx, "dy[1]^3"));
  CHECK(fm.F(1, 2) == E(ctx, "dy[1]^2*dy[2]"));
  CHECK(fm.F(2, 2) == E(ctx, "dy[1]*dy[2]^2"));

  CubicForm l(ctx);
  l.set_L(1, 1, 2);
  const PdeSystem fl = expand_cubic(l);
  CHECK(fl.F(1, 1) == E(ctx, "2*dy[1]^2"));
  CHECK(fl.F(1, 2) == E(ctx, "dy[1]*dy[2]"));
  CHECK(fl.F(2, 2).is_zero());
}

TEST_CASE("extract_cubic inverts expand_cubic") {
  for (int n : {2, 3}) {
    const JetContext ctx(n);
    CHECK(extract_cubic(PdeSystem::zero(ctx)).is_zero());
    for (const CubicForm& c : cubic_corpus(ctx, 8, 5)) CHECK(extract_cubic(expand_cubic(c)) == c);
  }
}

TEST_CASE("extract_cubic rejects unreachable monomials") {
  const JetContext ctx(2);
  CHECK_THROWS_AS(extract_cubic(testing::system_n2(ctx, "dy[2]^2", "0", "0")), NotCubicForm);
  CHECK_THROWS_AS(extract_cubic(testing::system_n2(ctx, "dy[1]^4", "0", "0")), NotCubicForm);
  CHECK_THROWS_AS(extract_cubic(testing::system_n2(ctx, "1/(1+dy[1])", "0", "0")), NotCubicForm);
}

TEST_CASE("coefficient_annihilation examples") {
  const JetContext ctx(2);
  const Expr p1 = ctx.p(1), p2 = ctx.p(2);
  CHECK(all_zero(coefficient_annihilation(ctx, p1 * p2 - p2 * p1)));
  const Residuals d = coefficient_annihilation(ctx, p1 * p1 * p2);
  CHECK(d.at({1, 1, 2}) == Expr(2));
  CHECK(count_nonzero(d) == 1);
  const Residuals a = coefficient_annihilation(ctx, 5);
  CHECK(a.at({}) == Expr(5));
  CHECK(count_nonzero(a) == 1);
  CHECK_THROWS_AS(coefficient_annihilation(ctx, p1 * p1 * p1 * p1), DegreeTooHigh);
}

TEST_CASE("flatness residuals for G[1][1] = y") {
  const JetContext ctx(2);
  CubicForm c(ctx);
  CHECK(all_zero(flatness_residuals(c).fam2));
  c.set_G(1, 1, ctx.y());
  const FlatnessResiduals r = flatness_residuals(c);
  // Hand evaluation of the (II') family at (1,1,2,2): only the G_y term
  // survives; see the ledger for the sign.
  CHECK(r.fam2.at({1, 1, 2, 2}) == Expr(1));
  CHECK(!all_zero(derived_flatness_residuals(c)));
}

TEST_CASE("Chern tensor examples") {
  const JetContext ctx(2);
  CHECK(all_zero(chern_tensor_identity(PdeSystem::zero(ctx))));
  for (const CubicForm& c : cubic_corpus(ctx, 5, 9)) CHECK(all_zero(chern_tensor_identity(expand_cubic(c))));
  CHECK(!all_zero(chern_tensor_identity(testing::system_n2(ctx, "dy[1]^4", "0", "0"))));
}

TEST_CASE("is_flat verdicts") {
  const JetContext ctx(2);
  CHECK(std::holds_alternative<Flat>(is_flat(PdeSystem::zero(ctx))));
  CHECK(std::holds_alternative<Flat>(is_flat(testing::system_n2(ctx, "-2*dy[1]/(1+x[1])", "0", "0"))));
  const FlatVerdict v = is_flat(testing::system_n2(ctx, "y", "0", "0"));
  REQUIRE(std::holds_alternative<CubicButNotIntegrable>(v));
  CHECK(std::get<CubicButNotIntegrable>(v).family == "II'");
  CHECK(std::holds_alternative<NotCubic>(is_flat(testing::system_n2(ctx, "dy[2]^2", "0", "0"))));
}

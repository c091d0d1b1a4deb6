#include "doctest.h"
#include "flatpde/anchors.hpp"
#include "flatpde/corpus.hpp"
#include "helpers.hpp"

using namespace flatpde;
using testing::E;
using testing::transform_n2;

TEST_CASE("jacobian examples") {
  const JetContext ctx(2);
  CHECK(jacobian(PointTransformation::identity(ctx)) == Expr(1));
  CHECK(jacobian(transform_n2(ctx, "x[1]", "x[2]", "y*(1+x[1])")) == E(ctx, "1+x[1]"));
  CHECK(jacobian(transform_n2(ctx, "x[1]+x[2]", "x[2]", "y")) == Expr(1));
  CHECK_THROWS_AS(squares(transform_n2(ctx, "x[1]", "x[1]", "y")), DegenerateJacobian);
}

TEST_CASE("square table examples") {
  const JetContext ctx(2);
  CHECK(all_zero(squares(PointTransformation::identity(ctx)).entries()));
  const SquareTable s1 = squares(transform_n2(ctx, "x[1]", "x[2]", "y+x[1]^2"));
  CHECK(s1.at(3, 1, 1) == Expr(2));
  CHECK(count_nonzero(s1.entries()) == 1);
  const SquareTable s2 = squares(transform_n2(ctx, "x[1]", "x[2]", "y*(1+x[1])"));
  CHECK(s2.at(3, 1, 3) == E(ctx, "1/(1+x[1])"));
  CHECK(s2.at(3, 3, 1) == s2.at(3, 1, 3));
  CHECK(count_nonzero(s2.entries()) == 1);
}

TEST_CASE("synthesize and ghlm examples") {
  const JetContext ctx(2);
  const PdeSystem zero = synthesize(PointTransformation::identity(ctx));
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) CHECK(zero.F(i, j).is_zero());
  CHECK(ghlm_from_squares(PointTransformation::identity(ctx)).is_zero());

  const PointTransformation t1 = transform_n2(ctx, "x[1]", "x[2]", "y+x[1]^2");
  CHECK(synthesize(t1).F(1, 1) == Expr(-2));
  CubicForm g(ctx);
  g.set_G(1, 1, -2);
  CHECK(ghlm_from_squares(t1) == g);

  const PointTransformation t2 = transform_n2(ctx, "x[1]", "x[2]", "y*(1+x[1])");
  const PdeSystem s2 = synthesize(t2);
  CHECK(s2.F(1, 1) == E(ctx, "-2*dy[1]/(1+x[1])"));
  // y = (a + b x1 + c x2)/(1 + x1) forces a nonzero F[1][2].
  CHECK(s2.F(1, 2) == E(ctx, "-dy[2]/(1+x[1])"));
  CHECK(s2.F(2, 2).is_zero());
  const CubicForm h = ghlm_from_squares(t2);
  CHECK(h.H(1, 1, 1) == E(ctx, "-2/(1+x[1])"));
  CHECK(h.H(2, 1, 2) == E(ctx, "-1/(1+x[1])"));
}

TEST_CASE("pullback examples") {
  const JetContext ctx(2);
  CHECK(all_zero(pullback_residual(PointTransformation::identity(ctx), PdeSystem::zero(ctx))));
  const PointTransformation t = transform_n2(ctx, "x[1]", "x[2]", "y+x[1]^2");
  CHECK(all_zero(pullback_residual(t, synthesize(t))));
  const Residuals wrong = pullback_residual(t, PdeSystem::zero(ctx));
  CHECK(wrong.at({1, 1}) == Expr(-2));
}

TEST_CASE("prolongation examples") {
  const JetContext ctx(2);
  const VectorField id{ctx, {ctx.x(1), ctx.x(2)}, ctx.y()};
  CHECK(all_zero(prolong2(id)));
  const VectorField v{ctx, {ctx.x(1) * ctx.y(), 0}, 0};
  CHECK(prolong2(v).at({1, 1}) == E(ctx, "-2*dy[1]^2"));
  CHECK(prolong2_expanded_n2(v).at({1, 1}) == E(ctx, "-2*dy[1]^2"));
}

TEST_CASE("corpus is deterministic and nondegenerate") {
  const JetContext ctx(3);
  const auto a = transformation_corpus(ctx, 10, 4, 2), b = transformation_corpus(ctx, 10, 4, 2);
  REQUIRE(a.size() == 10);
  CHECK(a[0].Y == ctx.y());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].Y == b[i].Y);
    CHECK(!jacobian(a[i]).is_zero());
  }
}

TEST_CASE("counting identity") {
  for (int n = 2; n <= 6; ++n) CHECK(square_function_count(n) - ghlm_count(n) == n + 1);
  CHECK(square_function_count(3) == static_cast<long>(square_keys(3).size()));
}

#include "doctest.h"
#include "helpers.hpp"

using namespace flatpde;
using testing::E;

TEST_CASE("n < 2 is rejected") {
  CHECK_THROWS_AS(JetContext(1), NRequiresAtLeastTwo);
  CHECK_NOTHROW(JetContext(2));
}

TEST_CASE("PdeSystem validation") {
  const JetContext ctx(2);
  CHECK_THROWS_AS(PdeSystem(ctx, {{0, ctx.x(1)}, {ctx.x(2), 0}}), AsymmetricSystem);
  CHECK_THROWS_AS(PdeSystem(ctx, {{ctx.q(1, 1), 0}, {0, 0}}), JetVariableNotAllowed);
  CHECK_THROWS_AS(PdeSystem::zero(ctx).F(3, 1), IndexOutOfRange);
}

TEST_CASE("total_derivative examples") {
  const JetContext ctx(2);
  const PdeSystem sys = testing::system_n2(ctx, "y", "0", "0");
  for (int j = 1; j <= 2; ++j) CHECK(total_derivative(sys, ctx.y(), j) == ctx.p(j));
  for (int j = 1; j <= 2; ++j)
    for (int l = 1; l <= 2; ++l) CHECK(total_derivative(sys, ctx.p(l), j) == sys.F(j, l));
  CHECK(total_derivative(sys, ctx.x(1) * ctx.p(1), 1) == E(ctx, "dy[1] + x[1]*y"));
}

TEST_CASE("formal total derivative uses ddy") {
  const JetContext ctx(2);
  CHECK(formal_total_derivative(ctx, ctx.p(2), 1) == ctx.q(1, 2));
  CHECK(formal_total_derivative(ctx, ctx.x(2) * ctx.y(), 2) == ctx.y() + ctx.x(2) * ctx.p(2));
}

TEST_CASE("integrability examples") {
  const JetContext ctx(2);
  CHECK(all_zero(integrability_residuals(PdeSystem::zero(ctx)).residuals));
  const auto r = integrability_residuals(testing::system_n2(ctx, "y", "0", "0"));
  CHECK(r.residuals.at({1, 1, 2}) == ctx.p(2));
  CHECK(r.at(1, 2, 1) == -ctx.p(2));
  CHECK(r.at(2, 1, 1).is_zero());
}

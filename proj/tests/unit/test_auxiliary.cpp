#include <random>

#include "../support/laws.hpp"
#include "doctest.h"
#include "flatpde/corpus.hpp"
#include "helpers.hpp"

using namespace flatpde;
using testing::E;
using testing::transform_n2;

namespace {

PiTable pi_with(int n, std::map<Index, Expr> set) {
  Residuals entries;
  for (const Index& k : square_keys(n)) entries[k] = Expr();
  for (auto& [k, v] : set) entries[k] = v;
  return PiTable(n, entries);
}

CubicForm random_cubic(std::mt19937_64& rng, const JetContext& ctx) {
  const int n = ctx.n();
  auto r = [&] { return testing::random_polynomial(rng, ctx, 2, 2); };
  CubicForm c(ctx);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      c.set_G(i, j, r());
      for (int k = 1; k <= n; ++k) c.set_H(k, i, j, r());
    }
  for (int k = 1; k <= n; ++k) {
    c.set_M(k, r());
    for (int j = 1; j <= n; ++j) c.set_L(k, j, r());
  }
  return c;
}

ThetaFields random_theta(std::mt19937_64& rng, const JetContext& ctx) {
  ThetaFields th;
  for (int a = 1; a <= ctx.n() + 1; ++a) th.theta.push_back(testing::random_polynomial(rng, ctx, 2, 2));
  return th;
}

}  // namespace

TEST_CASE("pi_from_squares examples") {
  const JetContext ctx(2);
  CHECK(all_zero(pi_from_squares(squares(PointTransformation::identity(ctx))).entries()));
  const PiTable p1 = pi_from_squares(squares(transform_n2(ctx, "x[1]", "x[2]", "y+x[1]^2")));
  CHECK(p1.at(3, 1, 1) == Expr(2));
  CHECK(count_nonzero(p1.entries()) == 1);
  const PiTable p2 = pi_from_squares(squares(transform_n2(ctx, "x[1]", "x[2]", "y*(1+x[1])")));
  CHECK(p2.at(3, 1, 3) == E(ctx, "1/(1+x[1])"));
  CHECK(count_nonzero(p2.entries()) == 1);
}

TEST_CASE("cross_diff_residuals examples") {
  const JetContext ctx(2);
  CHECK(all_zero(cross_diff_residuals(ctx, pi_with(2, {}))));
  const Residuals r = cross_diff_residuals(ctx, pi_with(2, {{{3, 1, 1}, ctx.x(2)}}));
  CHECK(r.at({1, 1, 2, 3}) == Expr(1));
  for (int n : {2, 3}) {
    const JetContext c(n);
    for (const auto& t : transformation_corpus(c, 6, 2))
      CHECK(all_zero(cross_diff_residuals(c, pi_from_squares(squares(t)))));
  }
}

TEST_CASE("split_families re-index cross_diff_residuals") {
  const JetContext ctx(2);
  const SplitFamilies zero = split_families(ctx, pi_with(2, {}));
  CHECK((all_zero(zero.f1) && all_zero(zero.f2) && all_zero(zero.f3) && all_zero(zero.f4) && all_zero(zero.f5) &&
         all_zero(zero.f6)));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<Index, Expr> set;
    for (const Index& k : square_keys(2)) set[k] = testing::random_polynomial(rng, ctx, 2, 2);
    const PiTable p = pi_with(2, set);
    const Residuals cd = cross_diff_residuals(ctx, p);
    const SplitFamilies sp = split_families(ctx, p);
    const int N = 3;
    // cross_diff_residuals stores j2 < j3 only.
    for (const auto& [k, v] : sp.f1)
      if (k[1] < k[2]) CHECK(v == cd.at({k[0], k[1], k[2], N}));
    for (const auto& [k, v] : sp.f4)
      if (k[1] < k[2]) CHECK(v == cd.at({k[0], k[1], k[2], k[3]}));
    for (const auto& [k, v] : sp.f5) CHECK(v == cd.at({k[0], k[1], N, k[2]}));
  }
}

TEST_CASE("quasi_invert examples") {
  const JetContext ctx(2);
  ThetaFields zero_th{{0, 0, 0}};
  CHECK(all_zero(quasi_invert(CubicForm(ctx), zero_th).entries()));
  CubicForm c(ctx);
  c.set_L(1, 1, 2);
  const PiTable p = quasi_invert(c, zero_th);
  CHECK(p.at(1, 1, 3) == Expr(1));
  CHECK(count_nonzero(p.entries()) == 1);
  for (const auto& t : transformation_corpus(ctx, 6, 3)) {
    const SquareTable s = squares(t);
    CHECK(quasi_invert(ghlm_from_table(ctx, s), ThetaFields::from_squares(s)).entries() == s.entries());
  }
}

TEST_CASE("six families match the split families of the quasi-inversion") {
  for (int n : {2, 3}) {
    const JetContext ctx(n);
    std::mt19937_64 rng(n);
    for (int trial = 0; trial < (n == 2 ? 6 : 2); ++trial) {
      const CubicForm c = random_cubic(rng, ctx);
      const ThetaFields th = random_theta(rng, ctx);
      const SixFamilyResiduals six = six_family_residuals(c, th);
      const SplitFamilies sp = split_families(ctx, quasi_invert(c, th));
      for (const auto& [k, v] : six.fam1) CHECK(v == -sp.f1.at(k));
      for (const auto& [k, v] : six.fam2) CHECK(v == -2 * sp.f2.at(k));
      for (const auto& [k, v] : six.fam3) CHECK(v == sp.f3.at(k));
      for (const auto& [k, v] : six.fam4) CHECK(v == sp.f4.at(k));
      for (const auto& [k, v] : six.fam5) CHECK(v == sp.f5.at(k));
      for (const auto& [k, v] : six.fam6) CHECK(v == 2 * sp.f6.at(k));
    }
  }
}

TEST_CASE("six families vanish on corpus instances") {
  const JetContext ctx(2);
  for (const auto& t : transformation_corpus(ctx, 6, 4)) {
    const SquareTable s = squares(t);
    const SixFamilyResiduals six = six_family_residuals(ghlm_from_table(ctx, s), ThetaFields::from_squares(s));
    CHECK((all_zero(six.fam1) && all_zero(six.fam2) && all_zero(six.fam3) && all_zero(six.fam4) &&
           all_zero(six.fam5) && all_zero(six.fam6)));
  }
}

TEST_CASE("Theta system is the solved form of the six families") {
  const JetContext ctx(2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    const CubicForm c = random_cubic(rng, ctx);
    const ThetaFields th = random_theta(rng, ctx);
    const ThetaSystemResiduals ts = theta_system_residuals(c, th);
    const SixFamilyResiduals six = six_family_residuals(c, th);
    const Expr four_thirds = Expr(4) / 3, two_thirds = Expr(2) / 3;
    CHECK(ts.x == six.fam2);
    for (int j = 1; j <= 2; ++j) {
      CHECK(ts.y.at({j}) == four_thirds * six.fam5.at({j, j, j}) - two_thirds * six.fam3.at({j}));
      CHECK(ts.top_x.at({j}) == two_thirds * six.fam5.at({j, j, j}) - four_thirds * six.fam3.at({j}));
      CHECK(ts.top_y.at({j}) == six.fam6.at({j, j}));
    }
  }
}

TEST_CASE("theta_system_residuals examples") {
  const JetContext ctx(2);
  ThetaFields th{{0, 0, 0}};
  CHECK(all_zero(theta_system_residuals(CubicForm(ctx), th).x));
  th.theta[0] = ctx.x(1);
  const ThetaSystemResiduals ts = theta_system_residuals(CubicForm(ctx), th);
  CHECK(ts.x.at({1, 1}) == E(ctx, "1 - x[1]^2/2"));
  for (const auto& t : transformation_corpus(ctx, 6, 6)) {
    const SquareTable s = squares(t);
    const ThetaSystemResiduals r = theta_system_residuals(ghlm_from_table(ctx, s), ThetaFields::from_squares(s));
    CHECK((all_zero(r.x) && all_zero(r.y) && all_zero(r.top_x) && all_zero(r.top_y)));
  }
}

TEST_CASE("compat_residuals examples") {
  const JetContext ctx(2);
  const CompatResiduals zero = compat_residuals(CubicForm(ctx));
  CHECK((all_zero(zero.f1) && all_zero(zero.f1_derived) && all_zero(zero.f2) && all_zero(zero.f3) &&
         all_zero(zero.f4)));
  CubicForm g(ctx);
  g.set_G(1, 1, ctx.y());
  CompatResiduals r;
  CHECK_NOTHROW(r = compat_residuals(g));
  CHECK(r.f1.at({1, 1, 2}).is_zero());
  for (const auto& t : transformation_corpus(ctx, 4, 7)) {
    const CompatResiduals c = compat_residuals(ghlm_from_squares(t));
    CHECK((all_zero(c.f1) && all_zero(c.f1_derived) && all_zero(c.f2) && all_zero(c.f3) && all_zero(c.f4)));
  }
}

TEST_CASE("literal first compat family equals the derived one without Theta") {
  for (int n : {2, 3}) {
    const JetContext ctx(n);
    std::mt19937_64 rng(40 + n);
    std::vector<sym::Binding> no_theta;
    for (int a = 1; a <= n + 1; ++a) no_theta.emplace_back(ctx.universe().theta(a), Expr());
    for (int trial = 0; trial < (n == 2 ? 4 : 1); ++trial) {
      const CompatResiduals r = compat_residuals(random_cubic(rng, ctx));
      for (const auto& [k, v] : r.f1) CHECK(v == sym::substitute(r.f1_derived.at(k), no_theta));
    }
  }
}

#include "flatpde/anchors.hpp"

#include "flatpde/sym/linalg.hpp"

namespace flatpde {

namespace {

void require_n2(const JetContext& ctx) {
  if (ctx.n() != 2) throw IndexOutOfRange(ctx.n(), 2);
}

// Columns are derivative codes over (x^1, x^2, y) = (1, 2, 3): {1} is the
// first derivative in x^1, {1, 3} the mixed x^1 y derivative, and so on.
using Code = std::vector<int>;

struct Dets {
  const PointTransformation& t;

  Expr column_entry(int row, const Code& code) const {
    Expr e = t.component(row);
    for (int c : code) e = t.ctx.d(e, c);
    return e;
  }
  Expr operator()(const Code& a, const Code& b, const Code& c) const {
    sym::Matrix m(3, sym::Vector(3));
    for (int r = 1; r <= 3; ++r) {
      m[r - 1][0] = column_entry(r, a);
      m[r - 1][1] = column_entry(r, b);
      m[r - 1][2] = column_entry(r, c);
    }
    return sym::determinant(m);
  }
};

}  // namespace

Residuals determinantal_identities(const PointTransformation& t) {
  const JetContext& ctx = t.ctx;
  require_n2(ctx);
  const Dets D{t};
  const Code c1{1}, c2{2}, c3{3}, c11{1, 1}, c12{1, 2}, c22{2, 2}, c13{1, 3}, c23{2, 3}, c33{3, 3};
  const Expr delta_j = D(c1, c2, c3);
  const Expr p1 = ctx.p(1), p2 = ctx.p(2);
  Residuals out;

  out[{1, 1}] = ctx.q(1, 1) * delta_j + D(c1, c2, c11) + p1 * (2 * D(c1, c2, c13) - D(c11, c2, c3)) +
                p2 * -D(c1, c11, c3) + p1 * p1 * (D(c1, c2, c33) - 2 * D(c13, c2, c3)) +
                p1 * p2 * (-2 * D(c1, c13, c3)) + p1 * p1 * p1 * -D(c33, c2, c3) + p1 * p1 * p2 * -D(c1, c33, c3);

  out[{1, 2}] = ctx.q(1, 2) * delta_j + D(c1, c2, c12) + p1 * (D(c1, c2, c23) - D(c12, c2, c3)) +
                p2 * (D(c1, c2, c13) - D(c1, c12, c3)) + p1 * p1 * -D(c23, c2, c3) +
                p1 * p2 * (D(c1, c2, c33) - D(c13, c2, c3) - D(c1, c23, c3)) + p2 * p2 * -D(c1, c13, c3) +
                p1 * p1 * p2 * -D(c33, c2, c3) + p1 * p2 * p2 * -D(c1, c33, c3);

  // Every second-derivative column of the dy[1] term is (x^2, x^2).
  out[{2, 2}] = ctx.q(2, 2) * delta_j + D(c1, c2, c22) + p1 * -D(c22, c2, c3) +
                p2 * (2 * D(c1, c2, c23) - D(c1, c22, c3)) + p1 * p2 * (-2 * D(c23, c2, c3)) +
                p2 * p2 * (D(c1, c2, c33) - 2 * D(c1, c23, c3)) + p1 * p2 * p2 * -D(c33, c2, c3) +
                p2 * p2 * p2 * -D(c1, c33, c3);
  return out;
}

Residuals determinantal_anchor(const PointTransformation& t, const PdeSystem& sys) {
  const JetContext& ctx = t.ctx;
  std::vector<sym::Binding> jets;
  for (int a = 1; a <= 2; ++a)
    for (int b = a; b <= 2; ++b) jets.emplace_back(ctx.universe().q(a, b), sys.F(a, b));
  Residuals out = determinantal_identities(t);
  for (auto& [key, e] : out) e = sym::substitute(e, jets);
  return out;
}

Residuals prolong2_expanded_n2(const VectorField& v) {
  const JetContext& ctx = v.ctx;
  require_n2(ctx);
  auto X = [&](int k, int a, int b) { return ctx.d(ctx.d(v.Xi.at(k - 1), a), b); };
  auto Y = [&](int a, int b) { return ctx.d(ctx.d(v.Eta, a), b); };
  const Expr p1 = ctx.p(1), p2 = ctx.p(2);
  Residuals out;
  out[{1, 1}] = Y(1, 1) + p1 * (2 * Y(1, 3) - X(1, 1, 1)) + p2 * -X(2, 1, 1) + p1 * p1 * (Y(3, 3) - 2 * X(1, 1, 3)) +
                p1 * p2 * (-2 * X(2, 1, 3)) + p1 * p1 * p1 * -X(1, 3, 3) + p1 * p1 * p2 * -X(2, 3, 3);
  out[{1, 2}] = Y(1, 2) + p1 * (Y(2, 3) - X(1, 1, 2)) + p2 * (Y(1, 3) - X(2, 1, 2)) + p1 * p1 * -X(1, 2, 3) +
                p1 * p2 * (Y(3, 3) - X(1, 1, 3) - X(2, 2, 3)) + p2 * p2 * -X(2, 1, 3) + p1 * p1 * p2 * -X(1, 3, 3) +
                p1 * p2 * p2 * -X(2, 3, 3);
  out[{2, 2}] = Y(2, 2) + p1 * -X(1, 2, 2) + p2 * (2 * Y(2, 3) - X(2, 2, 2)) + p1 * p2 * (-2 * X(1, 2, 3)) +
                p2 * p2 * (Y(3, 3) - 2 * X(2, 2, 3)) + p1 * p2 * p2 * -X(1, 3, 3) + p2 * p2 * p2 * -X(2, 3, 3);
  return out;
}

PdeSystem synthesize_expanded_n2(const JetContext& ctx, const SquareTable& s) {
  require_n2(ctx);
  auto S = [&](int k, int a, int b) -> const Expr& { return s.at(k, a, b); };
  const Expr p1 = ctx.p(1), p2 = ctx.p(2);
  Expr f11 = -S(3, 1, 1) + p1 * (-2 * S(3, 1, 3) + S(1, 1, 1)) + p2 * S(2, 1, 1) +
             p1 * p1 * (-S(3, 3, 3) + 2 * S(1, 1, 3)) + p1 * p2 * (2 * S(2, 1, 3)) + p1 * p1 * p1 * S(1, 3, 3) +
             p1 * p1 * p2 * S(2, 3, 3);
  Expr f12 = -S(3, 1, 2) + p1 * (-S(3, 2, 3) + S(1, 1, 2)) + p2 * (-S(3, 1, 3) + S(2, 1, 2)) +
             p1 * p1 * S(1, 2, 3) + p1 * p2 * (-S(3, 3, 3) + S(1, 1, 3) + S(2, 2, 3)) + p2 * p2 * S(2, 1, 3) +
             p1 * p1 * p2 * S(1, 3, 3) + p1 * p2 * p2 * S(2, 3, 3);
  Expr f22 = -S(3, 2, 2) + p1 * S(1, 2, 2) + p2 * (-2 * S(3, 2, 3) + S(2, 2, 2)) + p1 * p2 * (2 * S(1, 2, 3)) +
             p2 * p2 * (-S(3, 3, 3) + 2 * S(2, 2, 3)) + p1 * p2 * p2 * S(1, 3, 3) + p2 * p2 * p2 * S(2, 3, 3);
  return PdeSystem(ctx, {{f11, f12}, {f12, f22}});
}

long square_function_count(int n) {
  const long m = n;
  // square^{k}_{x^{j1} x^{j2}}, square^{n+1}_{x^{j1} x^{j2}}, square^{k}_{x^{j1} y},
  // square^{n+1}_{x^{j1} y}, square^{k}_{yy}, square^{n+1}_{yy}.
  return m * m * (m + 1) / 2 + m * (m + 1) / 2 + m * m + m + m + 1;
}

long ghlm_count(int n) {
  const long m = n;
  return m * (m + 1) / 2 + m * m * (m + 1) / 2 + m * m + m;
}

}  // namespace flatpde

#include "flatpde/transform.hpp"

#include "flatpde/sym/linalg.hpp"

namespace flatpde {

using sym::Scalar;

PointTransformation PointTransformation::identity(const JetContext& ctx) {
  PointTransformation t{ctx, {}, ctx.y()};
  for (int i = 1; i <= ctx.n(); ++i) t.X.push_back(ctx.x(i));
  return t;
}

std::vector<Index> square_keys(int n) {
  std::vector<Index> out;
  for (int k = 1; k <= n + 1; ++k)
    for (int j1 = 1; j1 <= n + 1; ++j1)
      for (int j2 = j1; j2 <= n + 1; ++j2) out.push_back({k, j1, j2});
  return out;
}

namespace {

sym::Matrix jacobian_matrix(const PointTransformation& t) {
  const int m = t.ctx.n() + 1;
  sym::Matrix a(m, sym::Vector(m));
  for (int l = 1; l <= m; ++l)
    for (int c = 1; c <= m; ++c) a[l - 1][c - 1] = t.ctx.d(t.component(l), c);
  return a;
}

}  // namespace

Expr jacobian(const PointTransformation& t) { return sym::determinant(jacobian_matrix(t)); }

SquareTable squares(const PointTransformation& t, Execution ex) {
  const int n = t.ctx.n();
  const sym::Matrix j = jacobian_matrix(t);
  const Expr delta_j = sym::determinant(j);
  if (delta_j.is_zero()) throw DegenerateJacobian();
  return SquareTable(n, evaluate_family(square_keys(n), ex, [&](const Index& key) {
                       sym::Matrix m = j;
                       for (int l = 1; l <= n + 1; ++l)
                         m[l - 1][key[0] - 1] = t.ctx.d(t.ctx.d(t.component(l), key[1]), key[2]);
                       return sym::determinant(m) / delta_j;
                     }));
}

PdeSystem synthesize_from_squares(const JetContext& ctx, const SquareTable& s) {
  const int n = ctx.n(), y = n + 1;
  const Expr half(Scalar(1, 2));
  std::vector<std::vector<Expr>> f(n, std::vector<Expr>(n));
  for (int j1 = 1; j1 <= n; ++j1)
    for (int j2 = j1; j2 <= n; ++j2) {
      Expr e = -s.at(y, j1, j2);
      for (int k = 1; k <= n; ++k) {
        Expr inner = s.at(k, j1, j2) - delta(j1, k) * s.at(y, j2, y) - delta(j2, k) * s.at(y, j1, y);
        inner += ctx.p(j1) * (s.at(k, j2, y) - half * delta(j2, k) * s.at(y, y, y));
        inner += ctx.p(j2) * (s.at(k, j1, y) - half * delta(j1, k) * s.at(y, y, y));
        inner += ctx.p(j1) * ctx.p(j2) * s.at(k, y, y);
        e += ctx.p(k) * inner;
      }
      f[j2 - 1][j1 - 1] = e;
      f[j1 - 1][j2 - 1] = std::move(e);
    }
  return PdeSystem(ctx, std::move(f));
}

PdeSystem synthesize(const PointTransformation& t, Execution ex) {
  return synthesize_from_squares(t.ctx, squares(t, ex));
}

CubicForm ghlm_from_table(const JetContext& ctx, const SquareTable& s) {
  const int n = ctx.n(), y = n + 1;
  CubicForm c(ctx);
  for (int j1 = 1; j1 <= n; ++j1)
    for (int j2 = j1; j2 <= n; ++j2) {
      c.set_G(j1, j2, -s.at(y, j1, j2));
      for (int k = 1; k <= n; ++k)
        c.set_H(k, j1, j2, s.at(k, j1, j2) - delta(j1, k) * s.at(y, j2, y) - delta(j2, k) * s.at(y, j1, y));
    }
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= n; ++j) c.set_L(k, j, 2 * s.at(k, j, y) - delta(j, k) * s.at(y, y, y));
    c.set_M(k, s.at(k, y, y));
  }
  return c;
}

CubicForm ghlm_from_squares(const PointTransformation& t, Execution ex) {
  return ghlm_from_table(t.ctx, squares(t, ex));
}

Residuals pullback_residual(const PointTransformation& t, const PdeSystem& sys, Execution ex) {
  const JetContext& ctx = t.ctx;
  const int n = ctx.n();
  if (jacobian(t).is_zero()) throw DegenerateJacobian();

  // DX[i][j] = D_i X^j and DY[i] = D_i Y; X, Y do not depend on jets.
  sym::Matrix dx(n, sym::Vector(n));
  sym::Vector dy(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) dx[i - 1][j - 1] = formal_total_derivative(ctx, t.X[j - 1], i);
    dy[i - 1] = formal_total_derivative(ctx, t.Y, i);
  }
  auto solved = sym::solve_linear(dx, dy);
  if (!std::holds_alternative<sym::Solution>(solved)) throw DegenerateJacobian();
  const sym::Vector& yx = std::get<sym::Solution>(solved).x;

  std::vector<sym::Binding> jets;
  for (int a = 1; a <= n; ++a)
    for (int b = a; b <= n; ++b) jets.emplace_back(ctx.universe().q(a, b), sys.F(a, b));

  std::vector<Index> keys = all_tuples(2, n);
  return evaluate_family(keys, ex, [&](const Index& key) {
    const int k = key[0], i = key[1];
    Expr r = -formal_total_derivative(ctx, dy[i - 1], k);
    for (int j = 1; j <= n; ++j) r += formal_total_derivative(ctx, dx[i - 1][j - 1], k) * yx[j - 1];
    return sym::substitute(r, jets);
  });
}

Residuals prolong2(const VectorField& v, Execution ex) {
  const JetContext& ctx = v.ctx;
  const int n = ctx.n(), y = n + 1;
  auto d2 = [&](const Expr& e, int a, int b) { return ctx.d(ctx.d(e, a), b); };
  auto xi = [&](int k) -> const Expr& { return v.Xi.at(k - 1); };
  return evaluate_family(all_tuples(2, n), ex, [&](const Index& key) {
    const int j1 = key[0], j2 = key[1];
    Expr r = d2(v.Eta, j1, j2);
    for (int k1 = 1; k1 <= n; ++k1) {
      r += ctx.p(k1) * (delta(j1, k1) * d2(v.Eta, j2, y) + delta(j2, k1) * d2(v.Eta, j1, y) - d2(xi(k1), j1, j2));
      for (int k2 = 1; k2 <= n; ++k2) {
        Expr c = delta(j1, k1) * delta(j2, k2) * d2(v.Eta, y, y) - delta(j1, k1) * d2(xi(k2), j2, y) -
                 delta(j2, k1) * d2(xi(k2), j1, y);
        r += ctx.p(k1) * ctx.p(k2) * c;
        if (j1 == k1 && j2 == k2)
          for (int k3 = 1; k3 <= n; ++k3) r -= ctx.p(k1) * ctx.p(k2) * ctx.p(k3) * d2(xi(k3), y, y);
      }
    }
    return r;
  });
}

}  // namespace flatpde
